// gauss_nodes.hpp — Gauss-Legendre nodes/weights on [-1, 1] shared by the
// adaptive integrator and the fixed-panel phonon samplers. Internal header,
// not installed.

#pragma once

namespace polsim::detail {

inline constexpr int kGauss7 = 7;
inline constexpr double kNodes7[kGauss7] = {
    -0.9491079123427585, -0.7415311855993945, -0.4058451513773972,
    0.0,
    0.4058451513773972, 0.7415311855993945, 0.9491079123427585,
};
inline constexpr double kWeights7[kGauss7] = {
    0.12948496616887065, 0.2797053914892766, 0.3818300505051183,
    0.41795918367346896,
    0.3818300505051183, 0.2797053914892766, 0.12948496616887065,
};

inline constexpr int kGauss15 = 15;
inline constexpr double kNodes15[kGauss15] = {
    -0.9879925180204854, -0.937273392400706, -0.8482065834104272,
    -0.7244177313601701, -0.5709721726085388, -0.3941513470775634,
    -0.20119409399743451,
    0.0,
    0.20119409399743451, 0.3941513470775634, 0.5709721726085388,
    0.7244177313601701, 0.8482065834104272, 0.937273392400706,
    0.9879925180204854,
};
inline constexpr double kWeights15[kGauss15] = {
    0.030753241996118647, 0.07036604748810807, 0.10715922046717177,
    0.1395706779261539, 0.16626920581699378, 0.18616100001556188,
    0.19843148532711125,
    0.2025782419255609,
    0.19843148532711125, 0.18616100001556188, 0.16626920581699378,
    0.1395706779261539, 0.10715922046717177, 0.07036604748810807,
    0.030753241996118647,
};

} // namespace polsim::detail
