#include "osmag/error.hpp"

namespace osmag {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::XmlSyntax: return "XmlSyntax";
    case Errc::MissingAttribute: return "MissingAttribute";
    case Errc::NonNumericCoordinate: return "NonNumericCoordinate";
    case Errc::MissingRootAnchor: return "MissingRootAnchor";
    case Errc::DuplicateRootAnchor: return "DuplicateRootAnchor";
    case Errc::DanglingNodeReference: return "DanglingNodeReference";
    case Errc::DanglingAreaReference: return "DanglingAreaReference";
    case Errc::DuplicateOsmagId: return "DuplicateOsmagId";
    case Errc::UnknownOsmagType: return "UnknownOsmagType";
    case Errc::UnknownArea: return "UnknownArea";
    case Errc::NotInAnyArea: return "NotInAnyArea";
    case Errc::DegeneratePolygon: return "DegeneratePolygon";
    case Errc::ResolutionTooCoarse: return "ResolutionTooCoarse";
    case Errc::CellCapExceeded: return "CellCapExceeded";
    case Errc::Unreachable: return "Unreachable";
    case Errc::NoFreeCellNearPassage: return "NoFreeCellNearPassage";
    case Errc::NoPath: return "NoPath";
    case Errc::StartNotLocated: return "StartNotLocated";
    case Errc::GoalNotLocated: return "GoalNotLocated";
    case Errc::IncompatibleRoots: return "IncompatibleRoots";
    case Errc::ValidationFailed: return "ValidationFailed";
    case Errc::EmptySelection: return "EmptySelection";
    case Errc::BadProfile: return "BadProfile";
    case Errc::BadCache: return "BadCache";
    case Errc::BadStyle: return "BadStyle";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace osmag
