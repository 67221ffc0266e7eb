#include "fuzzsig/membership.hpp"

#include <sstream>
#include <vector>

#include "fuzzsig/error.hpp"
#include "fuzzsig/text.hpp"

namespace fuzzsig {

void check(const MembershipFunction& mf) {
  std::visit(
      [&mf](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        bool ok = true;
        if constexpr (std::is_same_v<T, Triangular>) ok = s.a <= s.b && s.b <= s.c;
        else if constexpr (std::is_same_v<T, LeftShoulder>) ok = s.plateau_end <= s.foot;
        else if constexpr (std::is_same_v<T, RightShoulder>) ok = s.foot <= s.plateau_start;
        else ok = s.width > 0.0;
        if (!ok) throw Error("fuzzy", "invalid membership function '" + describe(mf) + "'");
      },
      mf);
}

std::string describe(const MembershipFunction& mf) {
  using text::format_double;
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Triangular>)
          return "triangular " + format_double(s.a) + " " + format_double(s.b) + " " + format_double(s.c);
        else if constexpr (std::is_same_v<T, LeftShoulder>)
          return "left_shoulder " + format_double(s.plateau_end) + " " + format_double(s.foot);
        else if constexpr (std::is_same_v<T, RightShoulder>)
          return "right_shoulder " + format_double(s.foot) + " " + format_double(s.plateau_start);
        else
          return "gaussian " + format_double(s.mean) + " " + format_double(s.width);
      },
      mf);
}

MembershipFunction parse_mf(const std::string& text) {
  std::istringstream in(text);
  std::string shape;
  in >> shape;
  std::vector<double> params;
  for (std::string tok; in >> tok;) {
    const auto v = text::parse_double(tok);
    if (!v) throw Error("fuzzy", "bad number '" + tok + "' in '" + text + "'");
    params.push_back(*v);
  }
  auto need = [&](std::size_t n) {
    if (params.size() != n)
      throw Error("fuzzy", "'" + shape + "' takes " + std::to_string(n) + " parameters: '" + text + "'");
  };
  MembershipFunction mf;
  if (shape == "triangular") {
    need(3);
    mf = Triangular{params[0], params[1], params[2]};
  } else if (shape == "left_shoulder") {
    need(2);
    mf = LeftShoulder{params[0], params[1]};
  } else if (shape == "right_shoulder") {
    need(2);
    mf = RightShoulder{params[0], params[1]};
  } else if (shape == "gaussian") {
    need(2);
    mf = Gaussian{params[0], params[1]};
  } else {
    throw Error("fuzzy", "unknown membership shape '" + shape + "'");
  }
  check(mf);
  return mf;
}

}  // namespace fuzzsig
