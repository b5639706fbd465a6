#pragma once

#include "avforge/core.hpp"

namespace avforge {

// Plain Adam. The sparse step updates only the touched entries (moments of
// untouched entries are left alone), which keeps hash-table fits tractable.
class Adam {
 public:
  Adam(size_t n, double lr, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8)
      : lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps), m_(n, 0.0), v_(n, 0.0) {}

  void set_lr(double lr) { lr_ = lr; }
  double lr() const { return lr_; }

  void step(std::vector<double>& params, const std::vector<double>& grads) {
    if (params.size() != m_.size() || grads.size() != m_.size())
      throw ParamError("adam: size mismatch");
    ++t_;
    const double bc1 = 1.0 - std::pow(beta1_, t_);
    const double bc2 = 1.0 - std::pow(beta2_, t_);
    for (size_t i = 0; i < params.size(); ++i)
      params[i] -= update_one(i, grads[i], bc1, bc2);
  }

  // `touched` must be sorted and unique for determinism.
  void step_sparse(std::vector<double>& params, const std::vector<double>& grads,
                   const std::vector<size_t>& touched) {
    ++t_;
    const double bc1 = 1.0 - std::pow(beta1_, t_);
    const double bc2 = 1.0 - std::pow(beta2_, t_);
    for (size_t i : touched) params[i] -= update_one(i, grads[i], bc1, bc2);
  }

 private:
  double update_one(size_t i, double g, double bc1, double bc2) {
    m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * g;
    v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * g * g;
    const double mhat = m_[i] / bc1;
    const double vhat = v_[i] / bc2;
    return lr_ * mhat / (std::sqrt(vhat) + eps_);
  }

  double lr_, beta1_, beta2_, eps_;
  int t_ = 0;
  std::vector<double> m_, v_;
};

}  // namespace avforge
