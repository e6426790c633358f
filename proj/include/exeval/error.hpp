#pragma once

#include <stdexcept>
#include <string>

namespace exeval {

enum class Errc {
  // dataset
  MissingStream,
  LabelOutOfBounds,
  RateAnomaly,
  SeriesNotInRecording,
  InvalidConfig,
  // features
  LengthMismatch,
  InsufficientData,
  // labels
  InvalidCombination,
  MissingClass,
  // classifiers
  DimensionMismatch,
  DegenerateLabels,
  NonFiniteFeature,
  EmptyGrid,
  // pipelines
  MissingExerciseData,
  IncompleteResults,
  // evaluation
  TooFewVolunteers,
  UnknownLabel,
  ClassMismatch,
  SchemeMismatch,
  // generic
  Io,
  Parse,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace exeval
