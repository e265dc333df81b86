// Generated by adergen for euler_limiting_n3: fill in the bodies below.
#include "UserSolver.h"

namespace euler_limiting_n3 {

void UserSolver::initial(const double* x, double* Q) const {
  (void)x;
  for (int v = 0; v < 4; ++v) Q[v] = 0.0;
}

void UserSolver::boundary(const double* x, double t, int face, const double* Qin, double* Qout) const {
  (void)x, (void)t, (void)face;
  for (int v = 0; v < 4; ++v) Qout[v] = Qin[v];
}

void UserSolver::eigenvalues(const double* Q, int dir, double* lambda) const {
  (void)Q, (void)dir;
  for (int v = 0; v < 4; ++v) lambda[v] = 0.0;
}

bool UserSolver::admissible(const double* Q) const {
  (void)Q;
  return true;
}

void UserSolver::flux(const double* Q, double** F) const {
  (void)Q;
  for (int dir = 0; dir < 2; ++dir)
    for (int v = 0; v < 4; ++v) F[dir][v] = 0.0;
}

}  // namespace euler_limiting_n3
