#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hyperderiv {

enum class Status { pass, fail, error };

const char* to_string(Status s);
/// Throws ParseError on an unknown name.
Status status_from_string(const std::string& s);

/// One verified property. A failing check always carries a counterexample.
struct Check {
  std::string name;
  /// Name of the identity or axiom being checked.
  std::string anchor;
  Status status = Status::pass;
  double worst_residual = 0.0;
  std::optional<std::string> counterexample;
  std::optional<std::string> note;

  friend bool operator==(const Check&, const Check&) = default;
};

struct Report {
  std::string title;
  /// Run metadata such as the seed and tolerance.
  std::map<std::string, std::string> header;
  std::vector<Check> checks;

  bool passed() const;
  /// First check that did not pass, or nullptr.
  const Check* first_failure() const;
  const Check* find(const std::string& name) const;
  double worst_residual() const;

  void add(Check c) { checks.push_back(std::move(c)); }
  void append(const Report& other);

  friend bool operator==(const Report&, const Report&) = default;
};

/// Accumulates the worst residual of one property over many samples.
class CheckBuilder {
 public:
  CheckBuilder(std::string name, std::string anchor, double relative_bound)
      : name_(std::move(name)), anchor_(std::move(anchor)), bound_(relative_bound) {}

  /// Records a normalized residual; the first sample exceeding the bound
  /// becomes the counterexample, and later worse samples replace it.
  void observe(double normalized_residual, const std::string& where);
  void error(const std::string& what);
  void note(std::string text) { note_ = std::move(text); }
  bool failed() const { return failed_; }
  Check finish() const;

 private:
  std::string name_;
  std::string anchor_;
  double bound_;
  double worst_ = 0.0;
  bool failed_ = false;
  bool errored_ = false;
  std::optional<std::string> counterexample_;
  std::optional<std::string> note_;
};

}  // namespace hyperderiv
