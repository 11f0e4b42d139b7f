#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace modspace {

//! One entry of the self-check suite.  Checks are numbered 1..14 and named
//! by the property they exercise; each is self-contained and deterministic.
struct AcceptanceCheck {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

//! Runs a single check by id (1..14); throws std::out_of_range otherwise.
AcceptanceCheck run_acceptance_check(int id);

//! Runs the whole suite in order.
std::vector<AcceptanceCheck> run_acceptance_suite();

//! "c3 weight-class-verdicts: PASS [detail]" status line.
std::string acceptance_line(const AcceptanceCheck& check);

//! Bundle payload: per-check results plus the overall verdict.
nlohmann::json acceptance_bundle(const std::vector<AcceptanceCheck>& checks);

}  // namespace modspace
