#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "haarconv/measure.hpp"
#include "haarconv/semigroup.hpp"

namespace haarconv {

struct RootCheck {
  bool pass = false;
  double deviation = 0;  ///< TV(root^{*n}, target)
};

/// Is `root` an nth convolution root of `target`?
RootCheck verify_root(const FiniteCarrier& carrier, const DenseMeasure& target, const DenseMeasure& root, unsigned n,
                      double tol);

/// nth root of mu = sg.at(1): the same family at rate / n, evaluated at 1.
/// Requires the family to start at the unit (UnsupportedError otherwise).
DenseMeasure cp_root(const CompoundPoissonSemigroup& sg, unsigned n);

/// A choice of nth root r(n) for some n. Every insertion is verified.
class RootMap {
 public:
  RootMap(FiniteCarrier carrier, DenseMeasure base, double tol = 1e-10);

  /// Throws PreconditionError if root^{*n} differs from the base.
  void insert(unsigned n, DenseMeasure root);
  const DenseMeasure& base() const { return base_; }
  const DenseMeasure& at(unsigned n) const { return entries_.at(n); }
  const std::map<unsigned, DenseMeasure>& entries() const { return entries_; }
  /// Largest deviation over all stored roots.
  double verify() const;

 private:
  FiniteCarrier carrier_;
  DenseMeasure base_;
  double tol_;
  std::map<unsigned, DenseMeasure> entries_;
};

/// Root map r(n) = cp_root(sg, n) for the given n.
RootMap cp_root_map(const CompoundPoissonSemigroup& sg, std::span<const unsigned> ns);

struct DftRootResult {
  std::optional<DenseMeasure> root;
  std::size_t branch_index = 0;     ///< lexicographic index of the accepted branch choice
  std::size_t branches_tried = 0;   ///< branch choices examined (all of them when no root exists)
  std::size_t branch_count = 0;     ///< n^m
  double deviation = 0;             ///< verify_root deviation of the accepted root
};

inline constexpr std::size_t kDftMaxOrder = 8;
inline constexpr unsigned kDftMaxRoot = 4;

/// Searches nth roots of a measure on Z_m through its Fourier transform: every
/// choice of nth-root branch per coefficient is inverse transformed, in
/// lexicographic order with the principal branch first, and the first
/// nonnegative candidate (clipping down to -1e-12) passing verify_root at
/// 1e-8 is returned. Needs the standard Z_m table, m <= 8 and n <= 4.
DftRootResult nth_root_abelian_dft(const FiniteGroup& zm, const DenseMeasure& mu, unsigned n);

/// Witness that a measure is the time-1 value of a convolution semigroup.
struct EmbeddingCertificate {
  std::string carrier;          ///< group name, or space name for embeddings on X
  DenseMeasure target;          ///< alpha
  CompoundPoissonSemigroup family;  ///< generating family on G
  SpacePtr space;               ///< null for embeddings on G
  std::vector<double> grid;
  double tol = 0;
  std::vector<SemigroupCheck> checks;  ///< semigroup law of alpha_t on the grid
  double target_deviation = 0;         ///< TV(alpha_1, alpha)
  double lift_deviation = 0;           ///< TV(lift(alpha), mu_1), X only
  double right_invariance_deviation = 0;  ///< max over grid of mu_t K-right deviation, X only
  bool pass = false;
  std::string failure;  ///< why certification failed, empty on success

  /// alpha_t: mu_t on G or pi(mu_t) on X.
  DenseMeasure at(double t) const;
};

/// Certificate for the compound-Poisson family itself: alpha = sg.at(1).
EmbeddingCertificate embed_compound_poisson(const CompoundPoissonSemigroup& sg, std::span<const double> grid,
                                            double tol);

/// Certificate for alpha on X: lifts alpha to the K-right invariant mu, checks
/// it equals the hint's mu_1, checks every mu_t is K-right invariant and that
/// alpha_t = pi mu_t is a semigroup with alpha_1 = alpha. A hint starting at
/// delta_e is started at rho_K instead (the lift of delta_o). A mismatch gives
/// a certificate with pass = false and a failure reason.
EmbeddingCertificate embed_homogeneous(const DenseMeasure& alpha, const SpacePtr& x, const FiniteSection& s,
                                       const CompoundPoissonSemigroup& hint, std::span<const double> grid, double tol);

struct EmbeddedInvarianceReport {
  double bi_invariance_deviation = 0;      ///< K-bi-invariance of the K-right invariant mu_t
  double action_invariance_deviation = 0;  ///< K-invariance of alpha_t on X
  bool pass = false;
};

/// K-bi-invariance of the embedded measures and K-invariance of alpha_t, at
/// every grid time of a passing certificate on X. A certificate on G is
/// checked against the trivial subgroup and passes vacuously.
EmbeddedInvarianceReport invariance_of_embedded(const EmbeddingCertificate& cert, double tol);

}  // namespace haarconv
