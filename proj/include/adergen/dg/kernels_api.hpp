#pragma once

#include <stdexcept>
#include <string>

#include "adergen/dg/config.hpp"
#include "adergen/dg/user_solver.hpp"

namespace adergen {

/// Per-cell kernels the driver calls. Implemented once generically
/// (GenericKernels, runtime sizes) and once per generated tree (sizes and
/// operator tables hard-coded). Layouts, all AoS with stride qPad:
///   volume     [node][qPad], node = ix + n*iy + n*n*iz
///   fhi        [dir][node][qPad]
///   gradQ      [dir][node][qPad]
///   face data  [face][faceNode][qPad], face = 2*dir + side,
///              faceNode enumerates the remaining axes, lowest axis fastest
///   subcells   [subcell][qPad], (2N+1)^d subcells, x fastest
class Kernels {
 public:
  virtual ~Kernels() = default;

  virtual const KernelConfig& config() const = 0;
  virtual const char* name() const = 0;

  /// Space-time predictor. Returns the Picard iteration count (0 for the
  /// linear variants) or -1 when the iteration did not converge or produced
  /// non-finite values.
  virtual int predictor(const UserSolver& user, const double* luh, double dt, double h, double* qhi, double* fhi,
                        double* shi, double* qhbnd, double* fhbnd) const = 0;

  /// Rusanov flux on one face. fluxL is what the left cell sees, fluxR the
  /// right cell; they differ only by the non-conservative jump term.
  virtual void riemann(const UserSolver& user, const double* qL, const double* qR, const double* fL,
                       const double* fR, int dir, double h, double* fluxL, double* fluxR) const = 0;

  /// Corrector: luh += dt * (volume + surface + source terms). faceFlux[f]
  /// points at this cell's numerical flux on face f.
  virtual void update(const double* fhi, const double* shi, const double* const* faceFlux, double dt, double h,
                      double* luh) const = 0;

  /// Largest |eigenvalue| over all nodes and directions.
  virtual double maxEigenvalue(const UserSolver& user, const double* luh) const = 0;

  virtual void gradients(const double* luh, double h, double* gradQ) const {
    (void)luh, (void)h, (void)gradQ;
    throw std::logic_error(std::string(name()) + ": gradient kernel not available");
  }

  virtual void projectToSubcells(const double* luh, double* sub) const {
    (void)luh, (void)sub;
    missing("projection");
  }
  virtual void projectToDG(const double* sub, double* luh) const {
    (void)sub, (void)luh;
    missing("projection");
  }
  /// Means of a face polynomial over the (2N+1)^(d-1) subfaces.
  virtual void projectFaceToSubfaces(const double* face, double* subfaces) const {
    (void)face, (void)subfaces;
    missing("projection");
  }
  virtual void subcellMinMax(const double* sub, double* lo, double* hi) const {
    (void)sub, (void)lo, (void)hi;
    missing("dmp");
  }
  /// True when every subcell mean lies in [lo - delta, hi + delta], delta = max(delta0, eps*(hi-lo)).
  virtual bool dmpSatisfied(const double* sub, const double* lo, const double* hi, double delta0,
                            double eps) const {
    (void)sub, (void)lo, (void)hi, (void)delta0, (void)eps;
    missing("dmp");
    return false;
  }
  /// Rusanov fluxes at the len+1 faces of a line of len subcells, given two
  /// ghost subcells on each side (line holds len+4 states). MUSCL-minmod when
  /// secondOrder; faces whose reconstruction is inadmissible drop to first order.
  virtual void fvLineFluxes(const UserSolver& user, const double* line, int len, int dir, bool secondOrder,
                            double* fluxes) const {
    (void)user, (void)line, (void)len, (void)dir, (void)secondOrder, (void)fluxes;
    missing("fv step");
  }

 private:
  [[noreturn]] void missing(const char* what) const {
    throw std::logic_error(std::string(name()) + ": " + what + " kernel not available");
  }
};

}  // namespace adergen

/// Factory symbol every generated tree exports.
using adergen_create_kernels_fn = adergen::Kernels* (*)();
