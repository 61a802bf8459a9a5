// Builds the block frame and its eps-perturbation, then prints bounds,
// excess and the Riesz bound of the perturbed family's leading elements.

#include <cstdio>

#include "framekit/framekit.hpp"

int main() {
  using namespace framekit;
  const Index blocks = 5;
  const double eps = 0.3;

  const auto f = block_frame(blocks);
  const auto g = perturbed_block_frame(blocks, eps);

  const auto fb = frame_bounds(f.frame);
  const auto gb = frame_bounds(g.frame);
  std::printf("block frame:     %ld vectors in R^%ld, bounds [%.6f, %.6f], excess %ld\n",
              static_cast<long>(f.frame.size()), static_cast<long>(f.frame.dim()), fb.lower,
              fb.upper, static_cast<long>(excess(f.frame).excess));
  std::printf("perturbed frame: bounds [%.6f, %.6f], excess %ld\n", gb.lower, gb.upper,
              static_cast<long>(excess(g.frame).excess));

  const auto leading = leading_elements(g.structure);
  const auto v = riesz_verdict(g.frame.subfamily(leading));
  std::printf("leading g elements: Riesz basis %s, lower bound %.6f (eps^2 = %.6f)\n",
              v.is_riesz_basis_for_space ? "yes" : "no", v.lower, eps * eps);

  const auto cert = check_certificate(PerturbationPair(f.frame, g.frame), 0.0, eps);
  std::printf("(0, eps) certificate: admissible %d, psd %d, predicted [%.6f, %.6f]\n",
              cert.admissible, cert.psd_test_passed, cert.predicted_lower.value_or(0.0),
              cert.predicted_upper.value_or(0.0));
  return 0;
}
