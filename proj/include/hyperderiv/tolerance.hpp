#pragma once

namespace hyperderiv {

/// Comparison tolerance: a difference passes when it is at most
/// `max(relative * scale, absolute)`.
struct Tolerance {
  double relative = 1e-9;
  double absolute = 1e-12;

  bool accepts(double difference, double scale) const {
    return difference <= bound(scale);
  }
  double bound(double scale) const {
    const double rel = relative * scale;
    return rel > absolute ? rel : absolute;
  }
  /// Residual normalized so that `accepts` is equivalent to
  /// `normalized(d, s) <= relative`.
  double normalized(double difference, double scale) const {
    const double floor = relative > 0.0 ? absolute / relative : 0.0;
    const double denom = scale > floor ? scale : floor;
    return denom > 0.0 ? difference / denom : difference;
  }
};

/// Process-wide default used by every operation that is not handed an
/// explicit tolerance. Reads and writes are atomic.
Tolerance default_tolerance();
void set_default_tolerance(Tolerance tol);

/// Restores the previous default on destruction.
class ScopedTolerance {
 public:
  explicit ScopedTolerance(Tolerance tol) : saved_(default_tolerance()) {
    set_default_tolerance(tol);
  }
  ~ScopedTolerance() { set_default_tolerance(saved_); }
  ScopedTolerance(const ScopedTolerance&) = delete;
  ScopedTolerance& operator=(const ScopedTolerance&) = delete;

 private:
  Tolerance saved_;
};

}  // namespace hyperderiv
