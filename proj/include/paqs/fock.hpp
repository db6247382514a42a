#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "paqs/errors.hpp"
#include "paqs/witness.hpp"

// Truncated Fock-space engine: state builders, ladder-operator actions,
// moments, the beam-splitter unitary, no-click POVM conditioning, and the
// loss channel. This is the brute-force reference every closed-form module
// is checked against, so everything here is computed directly in the number
// basis with no scheme-specific shortcuts.
namespace paqs::fock {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kHermTol = 1e-12;     // elementwise Hermiticity
inline constexpr double kTraceTol = 1e-10;    // unit trace after normalization
inline constexpr double kEigenFloor = -1e-10; // smallest admissible eigenvalue
inline constexpr int kMaxMomentOrder = 12;    // factorial-weight guard
inline constexpr int kMaxJointDim = 4096;     // two-mode dimension cap

struct TruncationPolicy {
    int max_dim = 32;      // Fock basis size N
    double tail_tol = 1e-12; // max probability mass allowed at/above cutoff

    void validate() const;

    // Basis sizes that keep photon-number moments (m <= 5) accurate to well
    // below 1e-9 for the state families used here.
    static TruncationPolicy for_coherent(double alpha_abs, double tail_tol = 1e-12);
    static TruncationPolicy for_thermal(double nbar, double tail_tol = 1e-12);
};

// Normalized pure state in the truncated number basis. Construction demands
// squared norm within [1 - tail_tol, 1 + eps] and then renormalizes exactly.
class FockVector {
public:
    FockVector(CVector amplitudes, TruncationPolicy policy);

    const CVector& amplitudes() const { return amps_; }
    const TruncationPolicy& policy() const { return policy_; }
    int dim() const { return static_cast<int>(amps_.size()); }

private:
    CVector amps_;
    TruncationPolicy policy_;
};

// Single-mode density matrix. Construction enforces Hermiticity to kHermTol
// (then symmetrizes away roundoff) and normalizes the trace to one.
// Positivity is not recomputed on every operation; min_eigenvalue() exposes
// it for the invariant checks.
class FockDensity {
public:
    FockDensity(CMatrix matrix, TruncationPolicy policy);

    const CMatrix& matrix() const { return mat_; }
    const TruncationPolicy& policy() const { return policy_; }
    int dim() const { return static_cast<int>(mat_.rows()); }

    double min_eigenvalue() const;

private:
    CMatrix mat_;
    TruncationPolicy policy_;
};

// Two-mode density matrix in the tensor basis |n1> x |n2>, index n1*d2 + n2.
class TwoModeDensity {
public:
    TwoModeDensity(CMatrix matrix, TruncationPolicy policy1, TruncationPolicy policy2);

    const CMatrix& matrix() const { return mat_; }
    int dim1() const { return policy1_.max_dim; }
    int dim2() const { return policy2_.max_dim; }
    const TruncationPolicy& policy1() const { return policy1_; }
    const TruncationPolicy& policy2() const { return policy2_; }

    double min_eigenvalue() const;

private:
    CMatrix mat_;
    TruncationPolicy policy1_, policy2_;
};

// --- state builders ---------------------------------------------------

// |alpha>: amplitudes proportional to alpha^n / sqrt(n!). Throws
// TruncationOverflow when the Poisson tail above the cutoff exceeds tail_tol.
FockVector coherent_state(Complex alpha, TruncationPolicy policy);

// |n>
FockVector number_state(int n, TruncationPolicy policy);

// Thermal state: diagonal nbar^n / (1+nbar)^(n+1), renormalized on the basis.
FockDensity thermal_state(double nbar, TruncationPolicy policy);

FockDensity density_from(const FockVector& psi);

// --- operator actions -------------------------------------------------

// rho -> a^dag rho a / Tr[a^dag rho a]. The top basis level must carry mass
// below tail_tol (the addition shifts occupation up by one).
FockDensity photon_add(const FockDensity& rho);

// <a^dag^p a^q> computed in the number basis. Guarded at p, q <= 12 where
// the factorial weights stay well inside double range.
Complex normal_moment(const FockDensity& rho, int p, int q);

// <a^m a^dag^m> by its diagonal number-basis form sum_n rho_nn (n+m)!/n!.
// Independent of the reordering identity below; used to cross-check it.
double antinormal_moment(const FockDensity& rho, int m);

// <a^m a^dag^m> from the normal ladder via
//   a^m a^dag^m = sum_{p=0}^{m} (m!)^2 / ((m-p)! (p!)^2) a^dag^p a^p.
// normal_ladder[p] must hold <a^dag^p a^p> for p = 0..m.
double antinormal_from_normal(std::span<const double> normal_ladder, int m);

// Convenience: the full order-m moment set of a state (m <= 6 so that the
// 2m-th moments stay inside the order guard). anti_m comes from the
// reordering sum over the extracted normal ladder.
witness::MomentSet extract_moment_set(const FockDensity& rho, int m);

double mean_photon(const FockDensity& rho);

// --- two-mode machinery -------------------------------------------------

// Kronecker product; throws TruncationOverflow when d1*d2 > kMaxJointDim.
TwoModeDensity tensor_product(const FockDensity& rho1, const FockDensity& rho2);

FockDensity reduce_mode1(const TwoModeDensity& rho12);

// Applies exp(theta (a1^dag a2 - a1 a2^dag)), the unitary whose Heisenberg
// action is b1 = cos(theta) a1 + sin(theta) a2, b2 = -sin(theta) a1 +
// cos(theta) a2. Computed as the exact matrix exponential of the truncated
// generator (blockwise over conserved total photon number).
TwoModeDensity beam_splitter_apply(const TwoModeDensity& rho12, double theta);

// No-click POVM on mode 2, Pi0 = sum_n (1-eta)^n |n><n|. Returns the
// conditional mode-1 state and P_nd = Tr[Pi0 rho] / Tr[rho] (exactly 1 at
// eta = 0). Throws ZeroProbability when P_nd < 1e-15.
std::pair<FockDensity, double> condition_no_click(const TwoModeDensity& rho12, double eta);

// Transmissivity-eta beam splitter with vacuum in the idle port, i.e. the
// standard Kraus decomposition of the pure-loss channel in the number basis.
FockDensity loss_channel(const FockDensity& rho, double eta);

// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const FockDensity& rho, const FockDensity& sigma);
double fidelity_with_pure(const FockDensity& rho, const FockVector& psi);

// --- heralded-addition pipeline ------------------------------------------

// End-to-end no-click heralding: rho_in (x) [p_s |1><1| + (1-p_s)|0><0|]
// through the beam splitter, then the no-click POVM on mode 2. Identical
// mathematics to tensor_product + beam_splitter_apply + condition_no_click,
// but organized over conserved total-photon sectors so grid-scale oracle
// sweeps stay cheap; the two routes are cross-checked in the tests.
// Construction cost is a one-time eigendecomposition per sector, reusable
// across theta/eta/p_s; run() is const and thread-safe.
class HeraldedAdder {
public:
    explicit HeraldedAdder(int max_input_dim);

    // Output lives on rho_in.dim() + 1 levels. Throws ZeroProbability when
    // the no-click probability falls below 1e-15.
    std::pair<FockDensity, double> run(const FockDensity& rho_in, double theta,
                                       double eta, double p_s) const;

private:
    struct Sector {
        Eigen::VectorXd lambda; // spectrum of i(a1^dag a2 - a1 a2^dag) on the sector
        Eigen::MatrixXd w;      // real eigenvectors of the tridiagonal similarity
    };
    int max_dim_;
    std::vector<Sector> sectors_; // index = total photon number
};

// One-shot convenience wrapper.
std::pair<FockDensity, double> heralded_photon_add(const FockDensity& rho_in, double theta,
                                                   double eta, double p_s);

} // namespace paqs::fock
