#pragma once

#include <string>
#include <vector>

#include "ngl/linalg.hpp"

namespace ngl {

struct Spectrum {
    std::vector<double> eigenvalues;  // ascending
    double min = 0.0;
    bool psd = false;  // min ≥ −1e−10
};

struct IntertwinerCandidate {
    Mat matrix;
    double frobenius_norm = 0.0;
};

// Per-eigenvalue comparison of a computed spectrum against a closed-form
// prediction evaluated on the base operator's eigenvalues.
struct SpectrumComparison {
    std::vector<double> base_eigenvalues;  // of A+B (or ΣO), ascending
    std::vector<double> predicted;         // closed form, sorted ascending
    std::vector<double> computed;          // direct eigendecomposition, ascending
    double max_discrepancy = 0.0;          // max |predicted − computed| after sorting
    bool degenerate = false;               // base operator has a near-zero eigenvalue
};

struct DefectResult {
    Mat op;
    Spectrum spectrum;
    SpectrumComparison comparison;
};

struct KernelInvarianceReport {
    int kernel_dim = 0;
    // residuals[k][i] = ‖T·O_k·v_i‖ for kernel basis vector v_i
    std::vector<std::vector<double>> residuals;
    bool invariant = true;  // all residuals ≤ 1e−8
};

struct OddProductReport {
    Mat product;            // ∏Ã_i
    double block_identity_deviation = 0.0;  // vs (−1)^n [I 0; 0 −I]
    double state_action_deviation = 0.0;    // action on the doubled state vs prediction
    std::string construction;               // how the tilde family was built
};

Mat abs_op(const Mat& m, double herm_tol = 1e-9);

Spectrum spectrum_of(const Mat& hermitian);

// ((A+B)/√2 ± (A+B)/|A+B|)² with the closed-form prediction (λ²/2 − 1)²
// evaluated on the eigenvalues of A+B. Eigenvalues of A+B below 1e−10 flag
// the comparison degenerate (the |·| division is skipped on that subspace).
DefectResult defect_operator(const Mat& a, const Mat& b, int sign);

// [S/√N + S/|S|]^N for S = ΣOᵢ; prediction
// [1/√N·Σ_{j=1..N−1}(sign λ)^j λ^{N−j} − 1]^N on the eigenvalues of S.
// PSD is only claimed for even N (the operator is then a perfect square).
DefectResult nplayer_defect_operator(const std::vector<Mat>& observables);

std::vector<double> schur_residuals(const Mat& t, const std::vector<Mat>& a_list,
                                    const std::vector<Mat>& b_list);

// Residuals of the six generalized relations
//   S-1: T·A·C = B·T·C     S-2: A·T·C = A·B·T
//   S-3: T·B·C = A·T·C     S-4: T·C·A = B·T·A
//   S-5: A·T·C = T·B·C     S-6: B·T·C = T·A·C
std::vector<double> schur3_residuals(const Mat& t, const Mat& a, const Mat& b, const Mat& c);

KernelInvarianceReport kernel_invariance(const Mat& t, const std::vector<Mat>& ops,
                                         double null_tol = 1e-10, double inv_tol = 1e-8);

OddProductReport odd_product_expansion(const std::vector<Mat>& tilded, int n);

// Block-embedded family Ã_i = diag(M_i, −M_i) whose product is the signed
// block identity: M_i are the anticommuting generators, the last one closed
// so that ∏M_i = −I (a real signed permutation, not Hermitian in general).
std::vector<Mat> odd_tilde_family(int n);

double frobenius_unit(const Mat& t, bool* unit_flag = nullptr, double tol = 1e-10);

}  // namespace ngl
