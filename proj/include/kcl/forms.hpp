#pragma once

// Inner products of the weighted model spaces, the definite and indefinite
// forms t_alpha, and the operators Q_alpha, S_alpha = J_alpha, P_alpha+-.

#include <utility>

#include "kcl/model_space.hpp"
#include "kcl/quadrature.hpp"

namespace kcl {

enum class InnerProductKind { RMinus, RPlus, AbsR, IndefiniteR, Eta, Omega };

const char* to_string(InnerProductKind k) noexcept;

struct InnerProductValue {
  cplx value{0.0, 0.0};
  IntegrationResult diagnostics;

  bool trusted() const noexcept { return diagnostics.status == Status::Converged; }
};

// alpha is ignored for kinds that do not carry one.
InnerProductValue inner_product(const ModelWeight& r, InnerProductKind kind, double alpha,
                                const TestFunction& f, const TestFunction& g,
                                const QuadratureConfig& cfg);

// 2 (f_o, g_o)_{omega_alpha} + (f, g)_{eta_alpha}
InnerProductValue t_alpha_pos(const ModelWeight& r, const TestFunction& f, const TestFunction& g,
                              double alpha, const QuadratureConfig& cfg);

// lim_k of the integral of f conj(g) r over [-k, k].
InnerProductValue t_alpha_indef(const ModelWeight& r, const TestFunction& f,
                                const TestFunction& g, double alpha, const QuadratureConfig& cfg);

// (Q f)(x) = sqrt(|x|^alpha + 1) f(x) - |x|^{alpha/2} f(-x)
TestFunction apply_Q_alpha(const TestFunction& f, double alpha);

// sgn(x) (Q f)(x); compactly supported inputs only.
TestFunction apply_S_alpha(const TestFunction& f, double alpha);
TestFunction apply_J_alpha(const TestFunction& f, double alpha);

// (f + S f) / 2 and (f - S f) / 2
std::pair<TestFunction, TestFunction> project_pm(const TestFunction& f, double alpha);

// Combines diagnostics of partial integrals: worst status, summed error.
IntegrationResult combine(const IntegrationResult& a, const IntegrationResult& b);

}  // namespace kcl
