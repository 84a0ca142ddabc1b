#pragma once

#include <Eigen/Dense>

namespace nnv {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline Mat pos_part(const Mat& m) { return m.cwiseMax(0.0); }
inline Mat neg_part(const Mat& m) { return m.cwiseMin(0.0); }
inline Vec pos_part(const Vec& v) { return v.cwiseMax(0.0); }
inline Vec neg_part(const Vec& v) { return v.cwiseMin(0.0); }

inline bool all_finite(const Vec& v) { return v.allFinite(); }
inline bool all_finite(const Mat& m) { return m.allFinite(); }

}  // namespace nnv
