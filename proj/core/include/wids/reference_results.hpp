#pragma once

#include <span>

#include "wids/types.hpp"

namespace wids {

// One published result row: percentages as printed in the source tables.
// Binary rows score the attack class; multiclass rows are support-weighted
// averages over the 8 classes.
struct ReferenceRow {
  Technique technique;
  Arch arch;
  double train_accuracy;
  double test_accuracy;
  double precision;
  double recall;
  double f1;
};

std::span<const ReferenceRow> reference_results(Task task);

// Returns nullptr if the combination is absent (it never is for the 5x4 grid).
const ReferenceRow* find_reference(Task task, Technique technique, Arch arch);

// Reference per-record inference latency in microseconds, end to end on the
// published test hardware, for the two headline architectures.
double reference_latency_us(Arch arch);

}  // namespace wids
