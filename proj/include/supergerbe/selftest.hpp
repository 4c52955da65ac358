#pragma once

#include <functional>
#include <string>
#include <vector>

#include "supergerbe/parallel.hpp"
#include "supergerbe/report.hpp"

namespace supergerbe {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool ok = false;
  std::string detail;  // counts on success, first failure otherwise
  double seconds = 0;
};

// Numbered acceptance criteria, 1..8.
int acceptance_count();
std::string acceptance_title(int id);
CriterionResult run_acceptance(int id, const Exec& exec = {});

// Per-example checks over the built-in corpus: validation, emit/parse
// identity, rep identity, decompose then verify, flat isomorphism.
Report corpus_selftest(const Exec& exec = {}, const std::function<void(const std::string&)>& progress = {});

}  // namespace supergerbe
