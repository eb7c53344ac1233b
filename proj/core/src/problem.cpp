#include "wg/problem.hpp"

#include "wg/error.hpp"
#include "wg/expr.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace wg {
namespace {

constexpr double kPi = std::numbers::pi;

ProblemSpec example_one() {
  ProblemSpec p;
  p.name = "ex1";
  p.a = [](const Vec2&, double u) { return 1.0 + u; };
  p.a_u = [](const Vec2&, double) { return 1.0; };
  p.u_exact = [](const Vec2& x) { return std::sin(kPi * x.x()) * std::sin(kPi * x.y()); };
  p.grad_u_exact = [](const Vec2& x) {
    const double sx = std::sin(kPi * x.x()), sy = std::sin(kPi * x.y());
    const double cx = std::cos(kPi * x.x()), cy = std::cos(kPi * x.y());
    return Vec2(kPi * cx * sy, kPi * sx * cy);
  };
  p.f = [](const Vec2& x) {
    const double sx = std::sin(kPi * x.x()), sy = std::sin(kPi * x.y());
    const double cx = std::cos(kPi * x.x()), cy = std::cos(kPi * x.y());
    const double u = sx * sy;
    return 2.0 * kPi * kPi * u * (1.0 + u) - kPi * kPi * (cx * cx * sy * sy + sx * sx * cy * cy);
  };
  p.g = [](const Vec2&) { return 0.0; };
  // 1 + u is positive only for u > -1; admissible states bracket the solution range [0, 1].
  p.u_range = {-0.5, 1.5};
  p.alpha0 = 0.5;
  p.alpha1 = 2.5;
  p.m_a = 2.5;
  return p;
}

double phi(double t) { return t * (1.0 - t) * std::exp(2.0 * t); }
double dphi(double t) { return (1.0 - 2.0 * t * t) * std::exp(2.0 * t); }
double ddphi(double t) { return (2.0 - 4.0 * t - 4.0 * t * t) * std::exp(2.0 * t); }

ProblemSpec example_two() {
  ProblemSpec p;
  p.name = "ex2";
  p.a = [](const Vec2&, double u) { return 1.0 + 0.5 * std::sin(u); };
  p.a_u = [](const Vec2&, double u) { return 0.5 * std::cos(u); };
  p.u_exact = [](const Vec2& x) { return phi(x.x()) * phi(x.y()); };
  p.grad_u_exact = [](const Vec2& x) {
    return Vec2(dphi(x.x()) * phi(x.y()), phi(x.x()) * dphi(x.y()));
  };
  p.f = [](const Vec2& x) {
    const double u = phi(x.x()) * phi(x.y());
    const double lap = ddphi(x.x()) * phi(x.y()) + phi(x.x()) * ddphi(x.y());
    const double gx = dphi(x.x()) * phi(x.y()), gy = phi(x.x()) * dphi(x.y());
    return -(1.0 + 0.5 * std::sin(u)) * lap - 0.5 * std::cos(u) * (gx * gx + gy * gy);
  };
  p.g = [](const Vec2&) { return 0.0; };
  p.u_range = {-5.0, 5.0};
  p.alpha0 = 0.5;
  p.alpha1 = 1.5;
  p.m_a = 1.5;
  return p;
}

ScalarField scalar(const Expr& e) {
  return [e](const Vec2& x) { return e(x.x(), x.y(), 0.0); };
}

CoefficientFn coefficient(const Expr& e) {
  return [e](const Vec2& x, double u) { return e(x.x(), x.y(), u); };
}

Expr expression(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key) || !doc.at(key).is_string())
    throw ValidationError(std::string("problem config needs string field \"") + key + "\"");
  try {
    return Expr::parse(doc.at(key).get<std::string>());
  } catch (const ParseError& e) {
    throw ValidationError(std::string("field \"") + key + "\": " + e.what());
  }
}

}  // namespace

ProblemSpec builtin_problem(const std::string& name) {
  if (name == "ex1") return example_one();
  if (name == "ex2") return example_two();
  throw Error("unknown built-in problem '" + name + "'");
}

ProblemSpec problem_from_config(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed problem config: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("problem config must be a JSON object");

  ProblemSpec p;
  p.name = doc.value("name", std::string("custom"));
  p.a = coefficient(expression(doc, "a"));
  p.a_u = coefficient(expression(doc, "a_u"));
  p.f = scalar(expression(doc, "f"));
  p.g = scalar(expression(doc, "g"));
  if (doc.contains("u_exact")) p.u_exact = scalar(expression(doc, "u_exact"));
  if (doc.contains("grad_u_exact")) {
    const auto& grad = doc.at("grad_u_exact");
    if (!grad.is_array() || grad.size() != 2 || !grad[0].is_string() || !grad[1].is_string())
      throw ValidationError("\"grad_u_exact\" must be an array of two expressions");
    const Expr gx = Expr::parse(grad[0].get<std::string>());
    const Expr gy = Expr::parse(grad[1].get<std::string>());
    p.grad_u_exact = [gx, gy](const Vec2& x) {
      return Vec2(gx(x.x(), x.y(), 0.0), gy(x.x(), x.y(), 0.0));
    };
  }
  try {
    p.alpha0 = doc.at("alpha0").get<double>();
    p.alpha1 = doc.at("alpha1").get<double>();
    if (doc.contains("u_range")) p.u_range = doc.at("u_range").get<std::array<double, 2>>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("problem config: ") + e.what());
  }
  if (!(p.alpha0 > 0.0) || !(p.alpha1 >= p.alpha0))
    throw ValidationError("need 0 < alpha0 <= alpha1");
  if (!(p.u_range[0] < p.u_range[1])) throw ValidationError("u_range must be increasing");
  p.m_a = doc.value("m_a", p.alpha1);
  return p;
}

ProblemSpec load_problem(const std::string& name_or_path) {
  if (name_or_path == "ex1" || name_or_path == "ex2") return builtin_problem(name_or_path);
  std::ifstream in(name_or_path);
  if (!in) throw Error("unknown problem '" + name_or_path + "' (not a built-in name or readable file)");
  std::stringstream buf;
  buf << in.rdbuf();
  return problem_from_config(buf.str());
}

void validate_problem(const ProblemSpec& problem) {
  constexpr int kGrid = 100;
  constexpr int kStates = 21;
  const double du = (problem.u_range[1] - problem.u_range[0]) / (kStates - 1);
  for (int j = 0; j < kGrid; ++j)
    for (int i = 0; i < kGrid; ++i) {
      const Vec2 x((i + 0.5) / kGrid, (j + 0.5) / kGrid);
      for (int s = 0; s < kStates; ++s) {
        const double u = problem.u_range[0] + s * du;
        auto where = [&] {
          std::ostringstream os;
          os << " at (" << x.x() << ", " << x.y() << ", u = " << u << ")";
          return os.str();
        };
        try {
          const double a = problem.a(x, u);
          if (!(a >= problem.alpha0 * (1.0 - 1e-12) && a <= problem.alpha1 * (1.0 + 1e-12))) {
            std::ostringstream os;
            os << "a = " << a << " outside [" << problem.alpha0 << ", " << problem.alpha1 << "]";
            throw ValidationError(os.str() + where());
          }
          const double h = 1e-5 * std::max(1.0, std::abs(u));
          const double fd = (problem.a(x, u + h) - problem.a(x, u - h)) / (2.0 * h);
          const double au = problem.a_u(x, u);
          if (!(std::abs(fd - au) <= 1e-6 * std::max(1.0, std::abs(au)))) {
            std::ostringstream os;
            os << "a_u = " << au << " disagrees with finite difference " << fd;
            throw ValidationError(os.str() + where());
          }
        } catch (const EvalError& e) {
          throw ValidationError(std::string(e.what()) + where());
        }
      }
    }
}

ProblemSpec polynomial_patch_problem(int degree) {
  if (degree < 1 || degree > 3) throw Error("patch problems exist for degrees 1 to 3");
  ProblemSpec p;
  p.name = "patch" + std::to_string(degree);
  p.a = [](const Vec2&, double) { return 1.0; };
  p.a_u = [](const Vec2&, double) { return 0.0; };
  p.u_exact = [degree](const Vec2& v) {
    const double x = v.x(), y = v.y();
    double u = 1.0 + 2.0 * x - 3.0 * y;
    if (degree >= 2) u += x * x - x * y + 2.0 * y * y;
    if (degree >= 3) u += 0.5 * x * x * x - x * y * y;
    return u;
  };
  p.grad_u_exact = [degree](const Vec2& v) {
    const double x = v.x(), y = v.y();
    Vec2 g(2.0, -3.0);
    if (degree >= 2) g += Vec2(2.0 * x - y, -x + 4.0 * y);
    if (degree >= 3) g += Vec2(1.5 * x * x - y * y, -2.0 * x * y);
    return g;
  };
  p.f = [degree](const Vec2& v) {
    double f = 0.0;
    if (degree >= 2) f -= 6.0;
    if (degree >= 3) f -= v.x();
    return f;
  };
  p.g = p.u_exact;
  p.alpha0 = p.alpha1 = 1.0;
  p.m_a = 1.0;
  return p;
}

}  // namespace wg
