#pragma once

#include <memory>
#include <span>
#include <string>
#include <utility>

#include <Eigen/Core>

#include "shiftlab/window.hpp"

namespace shiftlab {

enum class Domain { unilateral, bilateral };

/// Source of the cumulative base-2 log C(n) of a weight sequence:
///   C(n) = Σ_{j=1..n} log2 w_j (n >= 0),  C(n) = -Σ_{j=n+1..0} log2 w_j (n < 0),
/// so that w_{a+1}⋯w_b = 2^{C(b) - C(a)}.
class WeightModel {
 public:
  virtual ~WeightModel() = default;
  virtual Domain domain() const = 0;
  /// Indices n where C(n) is defined (unilateral: lo == 0).
  virtual Window cum_window() const = 0;
  virtual double log2_cum(Index n) const = 0;
  /// Sound lower bound on min C over [lo, hi]; exact scan by default.
  virtual double min_log2_cum(Index lo, Index hi) const;
  /// Sound lower bound on C(d + t) for d ≡ offset (mod step), d in [dlo, dhi],
  /// t in [0, tmax]. Defaults to the plain range bound.
  virtual double min_log2_cum_lattice(Index offset, Index step, Index dlo, Index dhi, Index tmax) const;
  /// log2 of (inf w, sup w) over the weight indices.
  virtual std::pair<double, double> log2_weight_bounds() const;
  /// Named generator ("s5", "s6", "constant:2") or empty for explicit data.
  virtual std::string generator() const { return {}; }
};

/// Positive weight sequence on a window of Z_+ or Z.
class WeightSeq {
 public:
  WeightSeq() = default;
  explicit WeightSeq(std::shared_ptr<const WeightModel> model) : model_(std::move(model)) {}

  /// Explicit weights from log2 w_j. Unilateral: j = 1..log2w.size().
  /// Bilateral: j = first..first+size-1 with first <= 0 < last.
  static WeightSeq from_log2(Domain domain, Index first, std::span<const double> log2w);
  static WeightSeq constant(double w, Domain domain, Window cum_window);

  const WeightModel& model() const { return *model_; }
  Domain domain() const { return model_->domain(); }
  bool bilateral() const { return domain() == Domain::bilateral; }
  Window cum_window() const { return model_->cum_window(); }
  /// Indices j with w_j defined.
  Window index_window() const {
    const Window c = cum_window();
    return {c.lo + 1, c.hi};
  }

  double log2_cum(Index n) const {
    if (!cum_window().contains(n)) {
      throw WindowError("product index " + std::to_string(n) + " outside " + to_string(cum_window()));
    }
    return model_->log2_cum(n);
  }
  /// log2 w_j.
  double log2_weight(Index j) const { return log2_cum(j) - log2_cum(j - 1); }
  double weight(Index j) const { return std::exp2(log2_weight(j)); }
  /// log2 (w_{a+1}⋯w_b) for a <= b.
  double log2_product(Index a, Index b) const { return log2_cum(b) - log2_cum(a); }

 private:
  std::shared_ptr<const WeightModel> model_;
};

/// Dense C(n) table over a window.
class DenseWeightModel : public WeightModel {
 public:
  DenseWeightModel(Domain domain, Index cum_lo, Eigen::VectorXd cum, std::string generator = {})
      : domain_(domain), cum_lo_(cum_lo), cum_(std::move(cum)), generator_(std::move(generator)) {}

  Domain domain() const override { return domain_; }
  Window cum_window() const override { return {cum_lo_, cum_lo_ + cum_.size() - 1}; }
  double log2_cum(Index n) const override { return cum_[n - cum_lo_]; }
  double min_log2_cum(Index lo, Index hi) const override;
  std::string generator() const override { return generator_; }
  const Eigen::VectorXd& table() const { return cum_; }

 private:
  Domain domain_;
  Index cum_lo_;
  Eigen::VectorXd cum_;
  std::string generator_;
};

/// Natural-log partial products: pos(n) = ln(w_1⋯w_n) for n = 0..N,
/// neg(k-1) = ln(w_{-k+1}⋯w_0) for k = 1..K (bilateral only).
struct PartialProducts {
  Eigen::VectorXd log_pos;
  Eigen::VectorXd log_neg;
};
PartialProducts partial_products(const WeightSeq& w);

}  // namespace shiftlab
