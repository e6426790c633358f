#include "exeval/error.hpp"

namespace exeval {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::MissingStream: return "MissingStream";
    case Errc::LabelOutOfBounds: return "LabelOutOfBounds";
    case Errc::RateAnomaly: return "RateAnomaly";
    case Errc::SeriesNotInRecording: return "SeriesNotInRecording";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::InsufficientData: return "InsufficientData";
    case Errc::InvalidCombination: return "InvalidCombination";
    case Errc::MissingClass: return "MissingClass";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::DegenerateLabels: return "DegenerateLabels";
    case Errc::NonFiniteFeature: return "NonFiniteFeature";
    case Errc::EmptyGrid: return "EmptyGrid";
    case Errc::MissingExerciseData: return "MissingExerciseData";
    case Errc::IncompleteResults: return "IncompleteResults";
    case Errc::TooFewVolunteers: return "TooFewVolunteers";
    case Errc::UnknownLabel: return "UnknownLabel";
    case Errc::ClassMismatch: return "ClassMismatch";
    case Errc::SchemeMismatch: return "SchemeMismatch";
    case Errc::Io: return "Io";
    case Errc::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace exeval
