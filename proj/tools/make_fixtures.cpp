// Regenerates the committed map fixtures: make_fixtures <tests/fixtures dir>
#include <filesystem>
#include <iostream>

#include "fixtures.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures <output dir>\n";
    return 2;
  }
  const std::filesystem::path dir = argv[1];
  std::filesystem::create_directories(dir / "defects");
  for (const auto& name : osmag::fixtures::valid_fixture_names())
    osmag::write_file(dir / (name + ".osm"), osmag::fixtures::make_fixture(name));
  for (const auto& [name, code] : osmag::fixtures::defect_fixtures())
    osmag::write_file(dir / "defects" / (name + ".osm"), osmag::fixtures::make_defect(name));
  std::cout << "wrote fixtures to " << dir << "\n";
  return 0;
}
