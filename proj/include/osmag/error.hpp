#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace osmag {

/// Failure categories raised by the library. The names are stable and are
/// printed by the CLI, so scripts may match on them.
enum class Errc {
  XmlSyntax,
  MissingAttribute,
  NonNumericCoordinate,
  MissingRootAnchor,
  DuplicateRootAnchor,
  DanglingNodeReference,
  DanglingAreaReference,
  DuplicateOsmagId,
  UnknownOsmagType,
  UnknownArea,
  NotInAnyArea,
  DegeneratePolygon,
  ResolutionTooCoarse,
  CellCapExceeded,
  Unreachable,
  NoFreeCellNearPassage,
  NoPath,
  StartNotLocated,
  GoalNotLocated,
  IncompatibleRoots,
  ValidationFailed,
  EmptySelection,
  BadProfile,
  BadCache,
  BadStyle,
  Io,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace osmag
