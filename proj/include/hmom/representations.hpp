#pragma once

#include "hmom/moment_core.hpp"

namespace hmom {

enum class Side { Lower, Upper };

/// Structural flavor of a representation returned by
/// canonical_representation. Principal flavors occur when tstar is an
/// endpoint of [0,1]; canonical flavors carry an interior atom at tstar.
enum class RepFlavor {
  PrincipalLower,
  PrincipalUpper,
  CanonicalLower,
  CanonicalUpper,
};

struct CanonicalRep {
  DiscreteMeasure measure;
  double star_weight = 0.0;  // mass placed at tstar
  double tstar = 0.0;
  RepFlavor flavor = RepFlavor::CanonicalLower;
};

/// Principal (lower/upper) representation of an interior moment point:
/// the unique representing measure of minimal support whose canonical
/// continuation terminates at 0 (lower) resp. 1 (upper).
/// Throws NotInteriorError if q is not interior, ConvergenceFailure if the
/// moment residual cannot be driven below 1e-10.
DiscreteMeasure principal_representation(const MomentVector& q, Side side);

/// Representation with a prescribed atom at tstar carrying maximal mass.
/// tstar in [0,1]; endpoints give back the principal representation whose
/// support contains that endpoint. Throws NodeCollision when tstar falls
/// within 1e-9 of another support node.
CanonicalRep canonical_representation(const MomentVector& q, double tstar);

/// Largest mass any representing measure of q can give to the point tstar.
double maximal_mass(const MomentVector& q, double tstar);

}  // namespace hmom
