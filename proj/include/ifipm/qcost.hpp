#pragma once

#include <string>
#include <vector>

#include "ifipm/errors.hpp"

namespace ifipm {

// Block-encoding parameter tuple (alpha, a, xi) plus an abstract circuit
// time; the calculus below tracks how the tuples compose, with every
// big-O constant set to one. Logs are base 2 throughout.
struct BlockEncodingSpec {
  double alpha = 1.0;  // normalization, >= ||A||
  int ancillas = 0;
  double xi = 0.0;  // encoding error
  double cost_t = 0.0;

  BlockEncodingSpec() = default;
  BlockEncodingSpec(double alpha_, int ancillas_, double xi_,
                    double cost_t_ = 0.0);
};

// Product of block-encoded matrices:
// (a1 a2, q1 + q2, a1 xi2 + a2 xi1).
BlockEncodingSpec be_product(const BlockEncodingSpec& u,
                             const BlockEncodingSpec& v);

// Product of preamplified block-encoded matrices:
// (2, q1 + q2 + 2, sqrt(2)(xi1 + xi2 + xi3)), time
// (a1 (T1 + q1) + a2 (T2 + q2)) log(1/xi3).
BlockEncodingSpec be_preamp_product(const BlockEncodingSpec& u,
                                    const BlockEncodingSpec& v, double xi3);

// Linear combination with a (beta, p, xi1)-state-preparation pair; the
// terms share (alpha, a, xi2) up to taking maxima:
// (alpha beta, a + p, alpha xi1 + alpha beta xi2).
BlockEncodingSpec be_lincomb(const std::vector<BlockEncodingSpec>& terms,
                             double beta, int p, double xi1);

// Encoding of a symmetric Kronecker product G (x)_s K from QRAM-stored
// factors: normalization ||G (x) K||_F^2 and O(log n) ancillas. The
// explicit construction through the sparse V encoding lands at twice this
// normalization; the golden tests rebuild that chain from be_product.
BlockEncodingSpec be_sym_kron_cost(double gk_frob, double xi, int n);

struct QlsaCost {
  double time = 0.0;
  bool xi_ok = true;  // encoding error fine enough for the solver bound
};

// Quantum linear system solve to accuracy delta given a block-encoding.
QlsaCost qlsa_cost(const BlockEncodingSpec& be, double kappa, double delta,
                   double t_v);

// Norm estimation to relative error delta.
double norm_est_cost(const BlockEncodingSpec& be, double kappa, double delta,
                     double t_v);

// Vector-state tomography readout of a d-dimensional solution to error xi,
// with solution-norm bound varrho and per-solve time t_ls.
double tomography_cost(double d, double xi, double varrho, double t_ls);

// One term c * n^en * kappa^ek * (1/eps)^ee * kappaA^ea * rho^er * ||A||_F^ef.
struct CostTerm {
  std::string label;
  double coeff = 1.0;
  double n_exp = 0.0;
  double kappa_exp = 0.0;
  double inv_eps_exp = 0.0;
  double kappa_a_exp = 0.0;
  double rho_exp = 0.0;
  double a_frob_exp = 0.0;

  double eval(double n, double kappa, double eps, double kappa_a = 1.0,
              double rho = 1.0, double a_frob = 1.0) const;
};

struct CostReport {
  double qram_accesses = 0.0;
  double classical_ops = 0.0;
  std::vector<std::pair<std::string, double>> breakdown;
  std::vector<CostTerm> terms;
};

struct CostModelParams {
  double kappa_a = 1.0;
  double rho = 1.0;
  double a_frob = 1.0;
};

// Leading-order running time predictions with unit constants: feasible and
// infeasible totals plus the diagonal (LO) specializations.
CostReport predict_if_totals(double n, double m, double kappa, double epsilon,
                             const CostModelParams& params = {});

// Asymptotic running-time comparison rows (classical IPM / faster IPM /
// cutting plane / quantum MWU / this work), as exponent structures.
std::vector<std::pair<std::string, CostTerm>> runtime_comparison_rows();

}  // namespace ifipm
