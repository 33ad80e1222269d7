#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "avcs/model.hpp"
#include "avcs/null_spec.hpp"

namespace avcs {

/// Raised when a root or minimum that must exist is not found. Indicates a
/// numerical bug, never bad user input.
class ProjectionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reverse information projection of an alternative onto a convex null.
struct Projection {
  ThetaPair theta_circ;
  double kl_value = 0.0;
  /// True iff the alternative already lies in the null, so theta_circ == star.
  bool interior_hit = false;
};

/// theta_a = theta_b = (n_a a* + n_b b*) / n.
Projection project_equality(const ThetaPair& star, const BlockDesign& design);

/// Minimiser of kl_block over the line theta_b = s + c theta_a. Bisection on
/// the first-order condition, run to floating-point resolution (well below
/// 1e-12 on theta_a).
Projection project_line(double s, double c, const ThetaPair& star, const BlockDesign& design);

/// Half-plane nulls: the alternative itself if it is a member, otherwise the
/// projection onto the bounding line.
Projection project_halfplane(const NullSpec& null, const ThetaPair& star,
                             const BlockDesign& design);

/// Log-odds nulls (LogOddsLE, LogOddsGE, LogOddsBand): the alternative if it
/// is a member, otherwise the minimiser of kl_block along the nearest
/// boundary curve {log OR = delta}.
Projection project_log_odds(const NullSpec& null, const ThetaPair& star,
                            const BlockDesign& design);

/// For a log-odds null and an alternative outside it, the delta of the
/// boundary curve the projection lies on; nullopt when star is a member.
std::optional<double> log_odds_boundary(const NullSpec& null, const ThetaPair& star);

/// Minimiser of kl_block along the curve {log OR = delta}. Golden-section
/// search over theta_a after a coarse three-point bracket, then polished by
/// bisection on the sign of the derivative along the curve.
Projection project_log_odds_curve(double delta, const ThetaPair& star, const BlockDesign& design);

/// Dispatches on the null variant. Throws std::domain_error unless star is
/// interior to the square.
Projection project(const NullSpec& null, const ThetaPair& star, const BlockDesign& design);

/// Left-hand side of the first-order condition for the line projection,
/// evaluated at circ:
///   n_a (-a*/a + (1-a*)/(1-a)) + n_b c (-b*/b + (1-b*)/(1-b)).
double line_first_order_residual(double c, const ThetaPair& star, const ThetaPair& circ,
                                 const BlockDesign& design);

}  // namespace avcs
