#include "ngl/opident.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ngl/strategies.hpp"

namespace ngl {

Mat abs_op(const Mat& m, double herm_tol) {
    if (!is_hermitian(m, herm_tol)) throw std::invalid_argument("abs_op: input is not Hermitian");
    return abs_op_impl(m);
}

Spectrum spectrum_of(const Mat& hermitian) {
    Spectrum s;
    const RVec ev = hermitian_eigenvalues(hermitian);
    s.eigenvalues.assign(ev.data(), ev.data() + ev.size());
    s.min = s.eigenvalues.empty() ? 0.0 : s.eigenvalues.front();
    s.psd = s.min >= -1e-10;
    return s;
}

namespace {

SpectrumComparison compare_spectra(const RVec& base, std::vector<double> predicted,
                                   const Spectrum& computed, bool degenerate) {
    SpectrumComparison cmp;
    cmp.base_eigenvalues.assign(base.data(), base.data() + base.size());
    std::sort(predicted.begin(), predicted.end());
    cmp.predicted = std::move(predicted);
    cmp.computed = computed.eigenvalues;
    cmp.degenerate = degenerate;
    for (size_t i = 0; i < cmp.computed.size() && i < cmp.predicted.size(); ++i)
        cmp.max_discrepancy = std::max(cmp.max_discrepancy, std::abs(cmp.predicted[i] - cmp.computed[i]));
    return cmp;
}

}  // namespace

DefectResult defect_operator(const Mat& a, const Mat& b, int sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("defect_operator: sign must be ±1");
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("defect_operator: dimension mismatch");
    if (observable_defect(a) > 1e-9 || observable_defect(b) > 1e-9)
        throw std::invalid_argument("defect_operator: inputs must be ±1 observables");

    const Mat sum = a + b;
    bool degenerate = false;
    const Mat sgn = sign_op_impl(sum, 1e-10, &degenerate);
    const Mat d0 = sum / std::sqrt(2.0) + static_cast<double>(sign) * sgn;
    DefectResult res;
    res.op = d0 * d0;
    res.spectrum = spectrum_of(res.op);

    const RVec base = hermitian_eigenvalues(sum);
    std::vector<double> predicted(static_cast<size_t>(base.size()));
    for (Eigen::Index i = 0; i < base.size(); ++i) {
        const double l = base(i);
        const double v = l * l / 2.0 - 1.0;
        predicted[static_cast<size_t>(i)] = v * v;
    }
    res.comparison = compare_spectra(base, std::move(predicted), res.spectrum, degenerate);
    return res;
}

DefectResult nplayer_defect_operator(const std::vector<Mat>& observables) {
    const int players = static_cast<int>(observables.size());
    if (players < 2) throw std::invalid_argument("nplayer_defect_operator: need at least 2 observables");
    const Eigen::Index dim = observables[0].rows();
    for (const Mat& o : observables) {
        if (o.rows() != dim || o.cols() != dim)
            throw std::invalid_argument("nplayer_defect_operator: dimension mismatch");
        if (observable_defect(o) > 1e-9)
            throw std::invalid_argument("nplayer_defect_operator: inputs must be ±1 observables");
    }

    Mat s = Mat::Zero(dim, dim);
    for (const Mat& o : observables) s += o;
    bool degenerate = false;
    const Mat sgn = sign_op_impl(s, 1e-10, &degenerate);
    const Mat d0 = s / std::sqrt(static_cast<double>(players)) + sgn;

    Mat power = Mat::Identity(dim, dim);
    for (int i = 0; i < players; ++i) power = power * d0;

    DefectResult res;
    res.op = power;
    res.spectrum = spectrum_of(0.5 * (power + power.adjoint()));

    const RVec base = hermitian_eigenvalues(s);
    std::vector<double> predicted(static_cast<size_t>(base.size()));
    for (Eigen::Index i = 0; i < base.size(); ++i) {
        const double l = base(i);
        const double sg = l >= 0 ? 1.0 : -1.0;
        double acc = 0.0;
        for (int j = 1; j <= players - 1; ++j)
            acc += std::pow(sg, j) * std::pow(l, players - j);
        const double v = acc / std::sqrt(static_cast<double>(players)) - 1.0;
        predicted[static_cast<size_t>(i)] = std::pow(v, players);
    }
    res.comparison = compare_spectra(base, std::move(predicted), res.spectrum, degenerate);
    return res;
}

std::vector<double> schur_residuals(const Mat& t, const std::vector<Mat>& a_list,
                                    const std::vector<Mat>& b_list) {
    if (a_list.size() != b_list.size())
        throw std::invalid_argument("schur_residuals: list size mismatch");
    std::vector<double> out;
    out.reserve(a_list.size());
    for (size_t i = 0; i < a_list.size(); ++i) {
        if (t.cols() != a_list[i].rows() || b_list[i].cols() != t.rows())
            throw std::invalid_argument("schur_residuals: shape mismatch at index " + std::to_string(i));
        out.push_back((t * a_list[i] - b_list[i] * t).norm());
    }
    return out;
}

std::vector<double> schur3_residuals(const Mat& t, const Mat& a, const Mat& b, const Mat& c) {
    const Eigen::Index n = t.rows();
    if (t.cols() != n || a.rows() != n || a.cols() != n || b.rows() != n || b.cols() != n ||
        c.rows() != n || c.cols() != n)
        throw std::invalid_argument("schur3_residuals: all matrices must be square of one size");
    std::vector<double> r(6);
    r[0] = (t * a * c - b * t * c).norm();
    r[1] = (a * t * c - a * b * t).norm();
    r[2] = (t * b * c - a * t * c).norm();
    r[3] = (t * c * a - b * t * a).norm();
    r[4] = (a * t * c - t * b * c).norm();
    r[5] = (b * t * c - t * a * c).norm();
    return r;
}

KernelInvarianceReport kernel_invariance(const Mat& t, const std::vector<Mat>& ops,
                                         double null_tol, double inv_tol) {
    KernelInvarianceReport rep;
    Eigen::JacobiSVD<Mat> svd(t, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    std::vector<Eigen::Index> null_cols;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) < null_tol) null_cols.push_back(i);
    // Columns of V beyond the singular-value count also span the kernel.
    for (Eigen::Index i = sv.size(); i < svd.matrixV().cols(); ++i) null_cols.push_back(i);
    rep.kernel_dim = static_cast<int>(null_cols.size());

    rep.residuals.resize(ops.size());
    for (size_t k = 0; k < ops.size(); ++k) {
        for (const Eigen::Index col : null_cols) {
            const Vec v = svd.matrixV().col(col);
            const double r = (t * (ops[k] * v)).norm();
            rep.residuals[k].push_back(r);
            if (r > inv_tol) rep.invariant = false;
        }
    }
    return rep;
}

std::vector<Mat> odd_tilde_family(int n) {
    if (n < 1 || n % 2 == 0) throw std::invalid_argument("odd_tilde_family: n must be odd");
    std::vector<Mat> blocks;
    if (n == 1) {
        blocks.push_back(-Mat::Identity(1, 1));
    } else {
        const auto gamma = anticommuting_family(n - 1);
        blocks.assign(gamma.begin(), gamma.end());
        Mat closer = -Mat::Identity(gamma[0].rows(), gamma[0].cols());
        for (int i = n - 2; i >= 0; --i) closer = closer * blocks[static_cast<size_t>(i)];
        blocks.push_back(closer);  // ∏ M_i = −I by construction
    }
    std::vector<Mat> fam;
    fam.reserve(static_cast<size_t>(n));
    for (const Mat& m : blocks) {
        const Eigen::Index d = m.rows();
        Mat big = Mat::Zero(2 * d, 2 * d);
        big.topLeftCorner(d, d) = m;
        big.bottomRightCorner(d, d) = -m;
        fam.push_back(std::move(big));
    }
    return fam;
}

OddProductReport odd_product_expansion(const std::vector<Mat>& tilded, int n) {
    if (n % 2 == 0) throw std::invalid_argument("odd_product_expansion: n must be odd");
    if (static_cast<int>(tilded.size()) != n)
        throw std::invalid_argument("odd_product_expansion: expected n operators");
    const Eigen::Index dim = tilded[0].rows();
    if (dim % 2 != 0) throw std::invalid_argument("odd_product_expansion: block dimension must be even");

    OddProductReport rep;
    rep.construction = "tilde = diag(M, -M); M_1..M_{n-1} anticommuting generators, M_n closes prod(M) = -I";
    Mat prod = Mat::Identity(dim, dim);
    for (const Mat& m : tilded) prod = prod * m;
    rep.product = prod;

    const Eigen::Index half = dim / 2;
    Mat expected = Mat::Zero(dim, dim);
    expected.topLeftCorner(half, half) = Mat::Identity(half, half);
    expected.bottomRightCorner(half, half) = -Mat::Identity(half, half);
    if (n % 2 == 1) expected = -expected;  // (−1)^n with n odd
    rep.block_identity_deviation = (prod - expected).norm();

    // Doubled state (Σ_{j≤half} + Σ_{j>half})(|j⟩⊗|j⟩)/√dim: the product must
    // act like the signed block identity on each |j⟩ factor pair.
    Vec doubled = Vec::Zero(dim * dim);
    for (Eigen::Index j = 0; j < dim; ++j)
        doubled(j * dim + j) = 1.0 / std::sqrt(static_cast<double>(dim));
    const Vec acted = apply_local(doubled, {static_cast<int>(dim), static_cast<int>(dim)}, 0, prod);
    Vec predicted = Vec::Zero(dim * dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        const double s = (j < half) ? -1.0 : 1.0;  // (−1)^n diag(I,−I) with odd n
        predicted(j * dim + j) = s / std::sqrt(static_cast<double>(dim));
    }
    rep.state_action_deviation = (acted - predicted).norm();
    return rep;
}

double frobenius_unit(const Mat& t, bool* unit_flag, double tol) {
    const double norm = t.norm();
    if (unit_flag) *unit_flag = std::abs(norm - 1.0) <= tol;
    return norm;
}

}  // namespace ngl
