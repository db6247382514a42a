#include "paqs/fock.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "paqs/detail/numeric.hpp"

namespace paqs::fock {

namespace {

// n (n-1) ... (n-k+1) = n!/(n-k)!; exact to ~1 ulp per factor for n <= a few
// hundred, far below the moment tolerances.
double falling_product(int n, int k) {
    double p = 1.0;
    for (int i = n - k + 1; i <= n; ++i) p *= static_cast<double>(i);
    return p;
}

Complex unit_i_pow(int k) {
    static constexpr Complex table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[k & 3];
}

void check_square(const CMatrix& m, int expected, const char* who) {
    if (m.rows() != m.cols() || m.rows() != expected) {
        std::ostringstream os;
        os << who << ": matrix is " << m.rows() << "x" << m.cols()
           << " but the policy says " << expected;
        throw InvalidParameter(os.str());
    }
}

void check_hermitian_and_normalize(CMatrix& m, const char* who) {
    const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (dev > kHermTol) {
        std::ostringstream os;
        os << who << ": Hermiticity deviation " << dev << " exceeds " << kHermTol;
        throw InvalidParameter(os.str());
    }
    m = 0.5 * (m + m.adjoint().eval());
    const double tr = m.trace().real();
    if (!(tr > 0.0) || !std::isfinite(tr)) {
        std::ostringstream os;
        os << who << ": trace " << tr << " is not a positive finite number";
        throw InvalidParameter(os.str());
    }
    m /= tr;
}

} // namespace

void TruncationPolicy::validate() const {
    if (max_dim < 2) throw InvalidParameter("TruncationPolicy: max_dim must be >= 2");
    if (!(tail_tol >= 0.0) || tail_tol >= 1.0)
        throw InvalidParameter("TruncationPolicy: tail_tol must lie in [0, 1)");
}

TruncationPolicy TruncationPolicy::for_coherent(double alpha_abs, double tail_tol) {
    const double a = std::abs(alpha_abs);
    const int n = static_cast<int>(std::ceil(a * a + 8.0 * a + 20.0));
    return {std::max(32, n), tail_tol};
}

TruncationPolicy TruncationPolicy::for_thermal(double nbar, double tail_tol) {
    const int n = static_cast<int>(std::ceil(40.0 * (nbar + 1.0)));
    return {std::max(32, n), tail_tol};
}

FockVector::FockVector(CVector amplitudes, TruncationPolicy policy)
    : amps_(std::move(amplitudes)), policy_(policy) {
    policy_.validate();
    if (amps_.size() != policy_.max_dim)
        throw InvalidParameter("FockVector: amplitude length does not match the policy");
    const double n2 = amps_.squaredNorm();
    if (n2 < 1.0 - policy_.tail_tol || n2 > 1.0 + 1e-12) {
        std::ostringstream os;
        os << "FockVector: squared norm " << n2 << " outside [1 - tail_tol, 1]";
        throw TruncationOverflow(os.str());
    }
    amps_ /= std::sqrt(n2);
}

FockDensity::FockDensity(CMatrix matrix, TruncationPolicy policy)
    : mat_(std::move(matrix)), policy_(policy) {
    policy_.validate();
    check_square(mat_, policy_.max_dim, "FockDensity");
    check_hermitian_and_normalize(mat_, "FockDensity");
}

double FockDensity::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(mat_, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

TwoModeDensity::TwoModeDensity(CMatrix matrix, TruncationPolicy policy1, TruncationPolicy policy2)
    : mat_(std::move(matrix)), policy1_(policy1), policy2_(policy2) {
    policy1_.validate();
    policy2_.validate();
    const long joint = static_cast<long>(policy1_.max_dim) * policy2_.max_dim;
    if (joint > kMaxJointDim) {
        std::ostringstream os;
        os << "TwoModeDensity: joint dimension " << joint << " exceeds the cap " << kMaxJointDim;
        throw TruncationOverflow(os.str());
    }
    check_square(mat_, static_cast<int>(joint), "TwoModeDensity");
    check_hermitian_and_normalize(mat_, "TwoModeDensity");
}

double TwoModeDensity::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(mat_, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

FockVector coherent_state(Complex alpha, TruncationPolicy policy) {
    policy.validate();
    const int dim = policy.max_dim;
    CVector amps(dim);
    amps(0) = std::exp(-0.5 * std::norm(alpha));
    for (int n = 1; n < dim; ++n) amps(n) = amps(n - 1) * alpha / std::sqrt(double(n));
    const double captured = amps.squaredNorm();
    if (captured < 1.0 - policy.tail_tol) {
        std::ostringstream os;
        os << "coherent_state: |alpha| = " << std::abs(alpha) << " leaves tail mass "
           << 1.0 - captured << " above " << dim << " levels (tail_tol " << policy.tail_tol << ")";
        throw TruncationOverflow(os.str());
    }
    return {std::move(amps), policy};
}

FockVector number_state(int n, TruncationPolicy policy) {
    policy.validate();
    if (n < 0 || n >= policy.max_dim)
        throw InvalidParameter("number_state: level outside the basis");
    CVector amps = CVector::Zero(policy.max_dim);
    amps(n) = 1.0;
    return {std::move(amps), policy};
}

FockDensity thermal_state(double nbar, TruncationPolicy policy) {
    policy.validate();
    if (!(nbar >= 0.0) || !std::isfinite(nbar))
        throw InvalidParameter("thermal_state: nbar must be finite and >= 0");
    const int dim = policy.max_dim;
    CMatrix m = CMatrix::Zero(dim, dim);
    if (nbar == 0.0) {
        m(0, 0) = 1.0;
        return {std::move(m), policy};
    }
    const double ratio = nbar / (1.0 + nbar);
    double p = 1.0 / (1.0 + nbar);
    double captured = 0.0;
    for (int n = 0; n < dim; ++n, p *= ratio) {
        m(n, n) = p;
        captured += p;
    }
    if (1.0 - captured > policy.tail_tol) {
        std::ostringstream os;
        os << "thermal_state: nbar = " << nbar << " leaves geometric tail "
           << 1.0 - captured << " above " << dim << " levels";
        throw TruncationOverflow(os.str());
    }
    return {std::move(m), policy};
}

FockDensity density_from(const FockVector& psi) {
    return {psi.amplitudes() * psi.amplitudes().adjoint(), psi.policy()};
}

FockDensity photon_add(const FockDensity& rho) {
    const int dim = rho.dim();
    const double top = rho.matrix()(dim - 1, dim - 1).real();
    if (top > rho.policy().tail_tol) {
        std::ostringstream os;
        os << "photon_add: top level carries mass " << top << ", shifting would lose it";
        throw TruncationOverflow(os.str());
    }
    // a^dag |n><m| a = sqrt((n+1)(m+1)) |n+1><m+1|
    CMatrix out = CMatrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n)
        for (int m = 1; m < dim; ++m)
            out(n, m) = std::sqrt(double(n) * double(m)) * rho.matrix()(n - 1, m - 1);
    return {std::move(out), rho.policy()};
}

Complex normal_moment(const FockDensity& rho, int p, int q) {
    if (p < 0 || q < 0 || p > kMaxMomentOrder || q > kMaxMomentOrder)
        throw OrderTooLarge("normal_moment: p, q must lie in [0, 12]");
    // Tr[rho a^dag^p a^q] = sum_n rho(n, n-q+p) sqrt(n!/(n-q)!) sqrt((n-q+p)!/(n-q)!)
    const int dim = rho.dim();
    Complex acc = 0.0;
    for (int n = q; n < dim; ++n) {
        const int mm = n - q + p;
        if (mm >= dim) break;
        acc += rho.matrix()(n, mm) *
               std::sqrt(falling_product(n, q)) * std::sqrt(falling_product(mm, p));
    }
    return acc;
}

double antinormal_moment(const FockDensity& rho, int m) {
    if (m < 0 || m > kMaxMomentOrder)
        throw OrderTooLarge("antinormal_moment: m must lie in [0, 12]");
    const int dim = rho.dim();
    double acc = 0.0;
    for (int n = 0; n < dim; ++n)
        acc += rho.matrix()(n, n).real() * falling_product(n + m, m);
    return acc;
}

double antinormal_from_normal(std::span<const double> normal_ladder, int m) {
    if (m < 0 || m > kMaxMomentOrder)
        throw OrderTooLarge("antinormal_from_normal: m must lie in [0, 12]");
    if (std::ssize(normal_ladder) < m + 1)
        throw MissingMoment("antinormal_from_normal: ladder must cover p = 0..m");
    double acc = 0.0;
    for (int p = 0; p <= m; ++p)
        acc += static_cast<double>(detail::reorder_coeff_u64(m, p)) * normal_ladder[p];
    return acc;
}

witness::MomentSet extract_moment_set(const FockDensity& rho, int m) {
    if (m < 1 || 2 * m > kMaxMomentOrder)
        throw OrderTooLarge("extract_moment_set: need 1 <= m <= 6");
    std::vector<double> ladder(m + 1);
    for (int p = 0; p <= m; ++p) ladder[p] = normal_moment(rho, p, p).real();
    return witness::MomentSet{
        .m = m,
        .a_m = normal_moment(rho, 0, m),
        .a2m = normal_moment(rho, 0, 2 * m),
        .n_m = ladder[m],
        .n_2m = normal_moment(rho, 2 * m, 2 * m).real(),
        .anti_m = antinormal_from_normal(ladder, m),
    };
}

double mean_photon(const FockDensity& rho) { return normal_moment(rho, 1, 1).real(); }

TwoModeDensity tensor_product(const FockDensity& rho1, const FockDensity& rho2) {
    const int d1 = rho1.dim(), d2 = rho2.dim();
    if (static_cast<long>(d1) * d2 > kMaxJointDim)
        throw TruncationOverflow("tensor_product: joint dimension exceeds the cap");
    CMatrix out(d1 * d2, d1 * d2);
    for (int n1 = 0; n1 < d1; ++n1)
        for (int m1 = 0; m1 < d1; ++m1)
            out.block(n1 * d2, m1 * d2, d2, d2) = rho1.matrix()(n1, m1) * rho2.matrix();
    return {std::move(out), rho1.policy(), rho2.policy()};
}

FockDensity reduce_mode1(const TwoModeDensity& rho12) {
    const int d1 = rho12.dim1(), d2 = rho12.dim2();
    CMatrix out = CMatrix::Zero(d1, d1);
    for (int n2 = 0; n2 < d2; ++n2)
        for (int n1 = 0; n1 < d1; ++n1)
            for (int m1 = 0; m1 < d1; ++m1)
                out(n1, m1) += rho12.matrix()(n1 * d2 + n2, m1 * d2 + n2);
    return {std::move(out), rho12.policy1()};
}

namespace {

// Eigensystem of H = i (a1^dag a2 - a1 a2^dag) restricted to the sector of
// total photon number s, mode-1 occupation in [lo, hi]. H has a purely
// imaginary subdiagonal i b_k with b_k = sqrt((k+1)(s-k)); conjugating by
// diag(i^r) turns it into the real symmetric tridiagonal (0, -b_k), so the
// eigenvectors are real up to the phase column diag((-i)^r).
struct SectorEigen {
    Eigen::VectorXd lambda;
    Eigen::MatrixXd w;
};

SectorEigen sector_eigensystem(int s, int lo, int hi) {
    const int d = hi - lo + 1;
    SectorEigen out;
    if (d == 1) {
        out.lambda = Eigen::VectorXd::Zero(1);
        out.w = Eigen::MatrixXd::Ones(1, 1);
        return out;
    }
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(d);
    Eigen::VectorXd sub(d - 1);
    for (int i = 0; i + 1 < d; ++i) {
        const int k = lo + i;
        sub(i) = -std::sqrt(double(k + 1) * double(s - k));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    out.lambda = es.eigenvalues();
    out.w = es.eigenvectors();
    return out;
}

// Column r0 of exp(theta (a1^dag a2 - a1 a2^dag)) on the sector, i.e. the
// image of the basis state with relative index r0: V e^{-i theta L} V^dag e_r0
// with V = diag((-i)^r) W.
CVector sector_column(const Eigen::VectorXd& lambda, const Eigen::MatrixXd& w, double theta,
                      int r0) {
    const int d = static_cast<int>(lambda.size());
    CVector phase(d);
    for (int e = 0; e < d; ++e)
        phase(e) = std::exp(Complex(0.0, -theta * lambda(e))) * w(r0, e);
    CVector col(d);
    for (int r = 0; r < d; ++r) {
        Complex acc = 0.0;
        for (int e = 0; e < d; ++e) acc += w(r, e) * phase(e);
        col(r) = unit_i_pow((4 - (r & 3)) & 3) * unit_i_pow(r0) * acc;
    }
    return col;
}

} // namespace

TwoModeDensity beam_splitter_apply(const TwoModeDensity& rho12, double theta) {
    const int d1 = rho12.dim1(), d2 = rho12.dim2();
    const int dim = d1 * d2;
    CMatrix u = CMatrix::Zero(dim, dim);
    for (int s = 0; s <= d1 - 1 + d2 - 1; ++s) {
        const int lo = std::max(0, s - (d2 - 1));
        const int hi = std::min(s, d1 - 1);
        const SectorEigen se = sector_eigensystem(s, lo, hi);
        const int d = hi - lo + 1;
        for (int c = 0; c < d; ++c) {
            const CVector col = sector_column(se.lambda, se.w, theta, c);
            const int m1 = lo + c;
            for (int r = 0; r < d; ++r) {
                const int n1 = lo + r;
                u(n1 * d2 + (s - n1), m1 * d2 + (s - m1)) = col(r);
            }
        }
    }
    CMatrix out = u * rho12.matrix() * u.adjoint();
    return {std::move(out), rho12.policy1(), rho12.policy2()};
}

std::pair<FockDensity, double> condition_no_click(const TwoModeDensity& rho12, double eta) {
    if (!(eta >= 0.0 && eta <= 1.0))
        throw InvalidParameter("condition_no_click: eta must lie in [0, 1]");
    const int d1 = rho12.dim1(), d2 = rho12.dim2();
    const double q = 1.0 - eta;
    CMatrix m = CMatrix::Zero(d1, d1);
    double weight = 1.0;
    for (int n2 = 0; n2 < d2; ++n2, weight *= q)
        for (int n1 = 0; n1 < d1; ++n1)
            for (int m1 = 0; m1 < d1; ++m1)
                m(n1, m1) += weight * rho12.matrix()(n1 * d2 + n2, m1 * d2 + n2);
    // P_nd as a ratio of the same diagonal sums makes eta = 0 give exactly 1.
    double num = 0.0, den = 0.0;
    weight = 1.0;
    for (int n2 = 0; n2 < d2; ++n2, weight *= q) {
        for (int n1 = 0; n1 < d1; ++n1) {
            const double diag = rho12.matrix()(n1 * d2 + n2, n1 * d2 + n2).real();
            num += weight * diag;
            den += diag;
        }
    }
    const double p_nd = num / den;
    if (p_nd < 1e-15)
        throw ZeroProbability("condition_no_click: no-click probability below 1e-15");
    return {FockDensity(std::move(m), rho12.policy1()), p_nd};
}

FockDensity loss_channel(const FockDensity& rho, double eta) {
    if (!(eta >= 0.0 && eta <= 1.0))
        throw InvalidParameter("loss_channel: eta must lie in [0, 1]");
    const int dim = rho.dim();
    CMatrix out = CMatrix::Zero(dim, dim);
    // Kraus amplitudes in log space: A_k|n> = sqrt(C(n,k) eta^(n-k) (1-eta)^k)|n-k>.
    std::vector<double> amp(dim);
    for (int k = 0; k < dim; ++k) {
        if (k > 0 && eta == 1.0) break;
        bool any = false;
        for (int a = 0; a + k < dim; ++a) {
            if (a > 0 && eta == 0.0) { amp[a] = 0.0; continue; }
            double lg = 0.5 * (std::lgamma(double(a + k + 1)) - std::lgamma(double(k + 1)) -
                               std::lgamma(double(a + 1)));
            if (a > 0) lg += 0.5 * a * std::log(eta);
            if (k > 0) lg += 0.5 * k * std::log1p(-eta);
            amp[a] = std::exp(lg);
            any = true;
        }
        if (!any) continue;
        for (int a = 0; a + k < dim; ++a)
            for (int b = 0; b + k < dim; ++b)
                out(a, b) += amp[a] * amp[b] * rho.matrix()(a + k, b + k);
    }
    return {std::move(out), rho.policy()};
}

double fidelity(const FockDensity& rho, const FockDensity& sigma) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.matrix());
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    CMatrix sqrt_rho = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
    CMatrix inner = sqrt_rho * sigma.matrix() * sqrt_rho;
    Eigen::SelfAdjointEigenSolver<CMatrix> es2(inner, Eigen::EigenvaluesOnly);
    const double root_sum = es2.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
    return root_sum * root_sum;
}

double fidelity_with_pure(const FockDensity& rho, const FockVector& psi) {
    const int d = std::min(rho.dim(), psi.dim());
    Complex acc = 0.0;
    for (int n = 0; n < d; ++n)
        for (int m = 0; m < d; ++m)
            acc += std::conj(psi.amplitudes()(n)) * rho.matrix()(n, m) * psi.amplitudes()(m);
    return acc.real();
}

HeraldedAdder::HeraldedAdder(int max_input_dim) : max_dim_(max_input_dim) {
    if (max_input_dim < 2) throw InvalidParameter("HeraldedAdder: need max_input_dim >= 2");
    sectors_.resize(max_dim_ + 1);
    for (int s = 0; s <= max_dim_; ++s) {
        const SectorEigen se = sector_eigensystem(s, 0, s);
        sectors_[s] = Sector{se.lambda, se.w};
    }
}

std::pair<FockDensity, double> HeraldedAdder::run(const FockDensity& rho_in, double theta,
                                                  double eta, double p_s) const {
    if (!(eta >= 0.0 && eta <= 1.0)) throw InvalidParameter("HeraldedAdder: eta must lie in [0, 1]");
    if (!(p_s >= 0.0 && p_s <= 1.0)) throw InvalidParameter("HeraldedAdder: p_s must lie in [0, 1]");
    const int n_in = rho_in.dim();
    if (n_in > max_dim_)
        throw InvalidParameter("HeraldedAdder: input dimension exceeds the precomputed range");
    const int n_out = n_in + 1;

    // U_s columns for the two source branches |n, j>, j in {0, 1}.
    std::vector<std::array<CVector, 2>> cols(n_in + 1);
    for (int s = 0; s <= n_in; ++s) {
        const Sector& sec = sectors_[s];
        cols[s][0] = sector_column(sec.lambda, sec.w, theta, s);
        if (s >= 1) cols[s][1] = sector_column(sec.lambda, sec.w, theta, s - 1);
    }

    std::vector<double> qpow(n_in + 1);
    qpow[0] = 1.0;
    for (int n2 = 1; n2 <= n_in; ++n2) qpow[n2] = qpow[n2 - 1] * (1.0 - eta);

    bool diagonal_input = true;
    for (int a = 0; a < n_in && diagonal_input; ++a)
        for (int b = 0; b < n_in; ++b)
            if (a != b && std::abs(rho_in.matrix()(a, b)) > 1e-15) { diagonal_input = false; break; }

    const double branch_weight[2] = {1.0 - p_s, p_s};
    CMatrix m = CMatrix::Zero(n_out, n_out);
    for (int j = 0; j <= 1; ++j) {
        if (branch_weight[j] == 0.0) continue;
        for (int n1 = 0; n1 < n_out; ++n1) {
            const int m1_end = diagonal_input ? n1 + 1 : n_out;
            for (int m1 = n1; m1 < m1_end; ++m1) {
                Complex acc = 0.0;
                for (int n2 = 0; n2 <= n_in; ++n2) {
                    const int s1 = n1 + n2, s2 = m1 + n2;
                    const int a = s1 - j, b = s2 - j;
                    if (s1 > n_in || s2 > n_in) break;
                    if (a < 0 || b < 0 || a >= n_in || b >= n_in) continue;
                    acc += qpow[n2] * rho_in.matrix()(a, b) *
                           cols[s1][j](n1) * std::conj(cols[s2][j](m1));
                }
                m(n1, m1) += branch_weight[j] * acc;
                if (m1 != n1) m(m1, n1) += branch_weight[j] * std::conj(acc);
            }
        }
    }
    const double p_nd = m.trace().real();
    if (p_nd < 1e-15)
        throw ZeroProbability("HeraldedAdder: no-click probability below 1e-15");
    TruncationPolicy out_policy{n_out, rho_in.policy().tail_tol};
    return {FockDensity(std::move(m), out_policy), p_nd};
}

std::pair<FockDensity, double> heralded_photon_add(const FockDensity& rho_in, double theta,
                                                   double eta, double p_s) {
    return HeraldedAdder(rho_in.dim()).run(rho_in, theta, eta, p_s);
}

} // namespace paqs::fock
