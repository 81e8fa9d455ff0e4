#include "hyperderiv/report.hpp"

#include <algorithm>
#include <cmath>

#include "hyperderiv/errors.hpp"

namespace hyperderiv {

const char* to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::error: return "error";
  }
  return "error";
}

Status status_from_string(const std::string& s) {
  if (s == "pass") return Status::pass;
  if (s == "fail") return Status::fail;
  if (s == "error") return Status::error;
  throw ParseError("unknown status '" + s + "'");
}

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const Check& c) { return c.status == Status::pass; });
}

const Check* Report::first_failure() const {
  for (const auto& c : checks) {
    if (c.status != Status::pass) return &c;
  }
  return nullptr;
}

const Check* Report::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

double Report::worst_residual() const {
  double w = 0.0;
  for (const auto& c : checks) w = std::max(w, c.worst_residual);
  return w;
}

void Report::append(const Report& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

void CheckBuilder::observe(double normalized_residual, const std::string& where) {
  const bool bad = std::isnan(normalized_residual) || normalized_residual > bound_;
  const double r = std::isnan(normalized_residual) ? INFINITY : normalized_residual;
  if (bad && (!failed_ || r > worst_)) counterexample_ = where;
  if (bad) failed_ = true;
  worst_ = std::max(worst_, r);
}

void CheckBuilder::error(const std::string& what) {
  errored_ = true;
  if (!counterexample_) counterexample_ = what;
}

Check CheckBuilder::finish() const {
  Check c;
  c.name = name_;
  c.anchor = anchor_;
  c.status = errored_ ? Status::error : (failed_ ? Status::fail : Status::pass);
  c.worst_residual = worst_;
  c.counterexample = counterexample_;
  c.note = note_;
  return c;
}

}  // namespace hyperderiv
