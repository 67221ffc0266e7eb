#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <variant>

#include <Eigen/Core>

namespace fuzzsig {

struct Triangular {
  double a, b, c;  // a <= b <= c, peak at b
  friend bool operator==(const Triangular&, const Triangular&) = default;
};

/// 1 up to plateau_end, linear down to 0 at foot.
struct LeftShoulder {
  double plateau_end, foot;
  friend bool operator==(const LeftShoulder&, const LeftShoulder&) = default;
};

/// 0 up to foot, linear up to 1 at plateau_start.
struct RightShoulder {
  double foot, plateau_start;
  friend bool operator==(const RightShoulder&, const RightShoulder&) = default;
};

struct Gaussian {
  double mean, width;  // width > 0
  friend bool operator==(const Gaussian&, const Gaussian&) = default;
};

using MembershipFunction = std::variant<Triangular, LeftShoulder, RightShoulder, Gaussian>;

/// Throws Error("fuzzy") for misordered breakpoints or a non-positive width.
void check(const MembershipFunction& mf);

/// "triangular 0.2 0.5 0.8", "gaussian 0.5 0.3", ...; inverse of parse_mf.
std::string describe(const MembershipFunction& mf);
MembershipFunction parse_mf(const std::string& text);

/// Interval type-2 blur. Triangles and shoulders shift horizontally by up to
/// +-delta; Gaussians vary their width over [width - delta, width + delta].
struct FootprintOfUncertainty {
  double delta = 0.0;
};

struct Grade {
  double lower = 0.0;
  double upper = 0.0;

  static Grade crisp(double v) { return {v, v}; }
  friend bool operator==(const Grade&, const Grade&) = default;
};

namespace detail {

template <typename Scalar>
Scalar ramp_up(Scalar x, double from, double to) {
  if (x <= Scalar(from)) return Scalar(0);
  if (x >= Scalar(to)) return Scalar(1);
  return (x - Scalar(from)) / Scalar(to - from);
}

template <typename Scalar>
Scalar ramp_down(Scalar x, double from, double to) {
  if (x <= Scalar(from)) return Scalar(1);
  if (x >= Scalar(to)) return Scalar(0);
  return (Scalar(to) - x) / Scalar(to - from);
}

template <typename Scalar>
Scalar gaussian(Scalar x, double mean, double width) {
  if (width <= 0.0) return x == Scalar(mean) ? Scalar(1) : Scalar(0);
  const Scalar z = (x - Scalar(mean)) / Scalar(width);
  return std::exp(Scalar(-0.5) * z * z);
}

/// Where the MF reaches 1, or the nearest end of its plateau.
inline double peak_toward(const MembershipFunction& mf, double x) {
  return std::visit(
      [x](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Triangular>) return s.b;
        else if constexpr (std::is_same_v<T, LeftShoulder>) return std::min(x, s.plateau_end);
        else if constexpr (std::is_same_v<T, RightShoulder>) return std::max(x, s.plateau_start);
        else return s.mean;
      },
      mf);
}

}  // namespace detail

template <typename Scalar>
Scalar eval_mf(const MembershipFunction& mf, Scalar x) {
  return std::visit(
      [x](const auto& s) -> Scalar {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Triangular>) {
          if (x < Scalar(s.a) || x > Scalar(s.c)) return Scalar(0);
          if (x <= Scalar(s.b)) return s.b == s.a ? Scalar(1) : detail::ramp_up(x, s.a, s.b);
          return s.c == s.b ? Scalar(1) : detail::ramp_down(x, s.b, s.c);
        } else if constexpr (std::is_same_v<T, LeftShoulder>) {
          return detail::ramp_down(x, s.plateau_end, s.foot);
        } else if constexpr (std::is_same_v<T, RightShoulder>) {
          return detail::ramp_up(x, s.foot, s.plateau_start);
        } else {
          return detail::gaussian(x, s.mean, s.width);
        }
      },
      mf);
}

/// Elementwise evaluation over a grid.
inline Eigen::ArrayXd eval_mf(const MembershipFunction& mf, const Eigen::ArrayXd& xs) {
  return xs.unaryExpr([&mf](double x) { return eval_mf(mf, x); });
}

/// Lower and upper membership over the blurred parameter set. Shifted
/// triangles/shoulders are quasi-concave in x, so the minimum sits at a window
/// end and the maximum at the point of the window closest to the peak.
inline Grade eval_mf_interval(const MembershipFunction& mf, FootprintOfUncertainty fou, double x) {
  const double d = std::max(0.0, fou.delta);
  if (d == 0.0) return Grade::crisp(eval_mf(mf, x));
  if (const auto* g = std::get_if<Gaussian>(&mf)) {
    return {detail::gaussian(x, g->mean, std::max(0.0, g->width - d)),
            detail::gaussian(x, g->mean, g->width + d)};
  }
  const double left = eval_mf(mf, x - d);
  const double right = eval_mf(mf, x + d);
  const double peak = std::clamp(detail::peak_toward(mf, x), x - d, x + d);
  return {std::min(left, right), std::max({left, right, eval_mf(mf, peak)})};
}

}  // namespace fuzzsig
