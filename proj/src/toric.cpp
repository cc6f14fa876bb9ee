#include "cobord/toric.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <optional>

#include "cobord/errors.hpp"

namespace cobord {
namespace {

std::vector<long> primitive(std::vector<long> v) {
  long g = 0;
  for (long x : v) g = std::gcd(g, std::abs(x));
  if (g > 1)
    for (long& x : v) x /= g;
  return v;
}

// Solves sum lambda_i rays_i = v over Q; nullopt when inconsistent or the
// rays are dependent (we only handle simplicial cones).
std::optional<std::vector<Rat>> barycentric(
    const std::vector<std::vector<long>>& rays, const std::vector<long>& v) {
  if (rays.empty()) return std::nullopt;
  std::size_t n = rays[0].size(), k = rays.size();
  // Augmented n x (k+1) system.
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(k + 1, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) m[i][j] = Rat(rays[j][i]);
    m[i][k] = Rat(v[i]);
  }
  std::vector<int> pivot_col_of_row(n, -1);
  std::size_t row = 0;
  for (std::size_t col = 0; col < k && row < n; ++col) {
    std::size_t p = row;
    while (p < n && m[p][col].is_zero()) ++p;
    if (p == n) continue;
    std::swap(m[p], m[row]);
    Rat inv = m[row][col].inverse();
    for (auto& x : m[row]) x = x * inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == row || m[r][col].is_zero()) continue;
      Rat f = m[r][col];
      for (std::size_t c2 = 0; c2 <= k; ++c2) m[r][c2] = m[r][c2] - f * m[row][c2];
    }
    pivot_col_of_row[row] = static_cast<int>(col);
    ++row;
  }
  if (row < k) return std::nullopt;  // dependent rays: not simplicial
  std::vector<Rat> lambda(k, Rat(0));
  for (std::size_t r = 0; r < n; ++r) {
    if (pivot_col_of_row[r] >= 0) {
      lambda[static_cast<std::size_t>(pivot_col_of_row[r])] = m[r][k];
    } else if (!m[r][k].is_zero()) {
      return std::nullopt;  // inconsistent
    }
  }
  return lambda;
}

}  // namespace

Cone Cone::normalized() const {
  Cone c;
  c.rays.reserve(rays.size());
  for (const auto& r : rays) c.rays.push_back(primitive(r));
  std::sort(c.rays.begin(), c.rays.end());
  return c;
}

bool Cone::operator==(const Cone& o) const {
  return normalized().rays == o.normalized().rays;
}

bool cone_contains(const Cone& cone, const std::vector<long>& v, bool strict) {
  auto lambda = barycentric(cone.rays, v);
  if (!lambda) return false;
  for (const auto& l : *lambda) {
    if (l < Rat(0)) return false;
    if (strict && l.is_zero()) return false;
  }
  return true;
}

Fan Fan::of_cone(const Cone& c) {
  Fan f;
  f.dim = c.dim_ambient();
  f.rays = c.rays;
  std::vector<std::size_t> idx(c.rays.size());
  std::iota(idx.begin(), idx.end(), 0);
  f.cones.push_back(idx);
  return f;
}

std::vector<Cone> Fan::maximal_cones() const {
  std::vector<Cone> out;
  out.reserve(cones.size());
  for (const auto& ix : cones) {
    Cone c;
    for (auto i : ix) c.rays.push_back(rays[i]);
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<Cone> Fan::canonical() const {
  std::vector<Cone> cs = maximal_cones();
  for (auto& c : cs) c = c.normalized();
  std::sort(cs.begin(), cs.end(),
            [](const Cone& a, const Cone& b) { return a.rays < b.rays; });
  return cs;
}

nlohmann::json Fan::to_json() const {
  return {{"dim", dim}, {"rays", rays}, {"cones", cones}};
}

Fan Fan::from_json(const nlohmann::json& j) {
  Fan f;
  f.dim = j.at("dim").get<std::size_t>();
  f.rays = j.at("rays").get<std::vector<std::vector<long>>>();
  f.cones = j.at("cones").get<std::vector<std::vector<std::size_t>>>();
  return f;
}

Fan star_subdivision(const Fan& fan, const std::vector<long>& v_in) {
  std::vector<long> v = primitive(v_in);
  auto maximal = fan.maximal_cones();
  bool in_support = false;
  for (const auto& c : maximal)
    if (cone_contains(c, v)) {
      in_support = true;
      break;
    }
  if (!in_support)
    throw VNotInSupport("subdivision vector lies outside the fan support");

  Fan out;
  out.dim = fan.dim;
  out.rays = fan.rays;
  auto ray_index = [&](const std::vector<long>& r) -> std::size_t {
    for (std::size_t i = 0; i < out.rays.size(); ++i)
      if (out.rays[i] == r) return i;
    out.rays.push_back(r);
    return out.rays.size() - 1;
  };

  // v already a ray: the fan is unchanged.
  for (const auto& r : fan.rays)
    if (primitive(r) == v) return fan;

  std::size_t vi = ray_index(v);
  for (std::size_t ci = 0; ci < fan.cones.size(); ++ci) {
    const auto& ix = fan.cones[ci];
    Cone c = maximal[ci];
    if (!cone_contains(c, v)) {
      out.cones.push_back(ix);
      continue;
    }
    // Replace by <v, facet> for every facet not containing v.
    for (std::size_t drop = 0; drop < ix.size(); ++drop) {
      Cone facet;
      std::vector<std::size_t> facet_ix;
      for (std::size_t j = 0; j < ix.size(); ++j) {
        if (j == drop) continue;
        facet.rays.push_back(fan.rays[ix[j]]);
        facet_ix.push_back(ix[j]);
      }
      if (cone_contains(facet, v)) continue;
      facet_ix.push_back(vi);
      out.cones.push_back(std::move(facet_ix));
    }
  }
  return out;
}

CobordismCone cobordism_cone(const Cone& sigma, const std::vector<long>& v) {
  std::size_t n = sigma.rays.size();
  if (n == 0 || sigma.dim_ambient() != n)
    throw Error("cobordism cone expects a full standard-basis cone");
  // Desk-scale precondition: sigma is the standard positive orthant.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (sigma.rays[i][j] != (i == j ? 1 : 0))
        throw Error("cobordism cone expects the standard basis cone");
  if (v.size() != n) throw Error("vector dimension mismatch");
  if (!cone_contains(sigma, v, /*strict=*/true))
    throw VNotInterior("v must lie in the interior of sigma");

  auto lift = [n](const std::vector<long>& r, long last) {
    std::vector<long> x(r);
    x.push_back(last);
    return x;
  };

  CobordismCone cc;
  std::vector<long> apex = lift(v, 1);  // v + e_{n+1}
  for (std::size_t i = 0; i < n; ++i) cc.tau.rays.push_back(lift(sigma.rays[i], 0));
  cc.tau.rays.push_back(apex);
  for (std::size_t skip = 0; skip < n; ++skip) {
    Cone face;
    for (std::size_t i = 0; i < n; ++i)
      if (i != skip) face.rays.push_back(lift(sigma.rays[i], 0));
    face.rays.push_back(apex);
    cc.upper_faces.push_back(std::move(face));
  }
  cc.lower = sigma;
  return cc;
}

std::vector<Cone> project_upper_boundary(const CobordismCone& cc) {
  std::vector<Cone> out;
  out.reserve(cc.upper_faces.size());
  for (const auto& f : cc.upper_faces) {
    Cone c;
    for (const auto& r : f.rays)
      c.rays.push_back(std::vector<long>(r.begin(), r.end() - 1));
    out.push_back(c.normalized());
  }
  std::sort(out.begin(), out.end(),
            [](const Cone& a, const Cone& b) { return a.rays < b.rays; });
  return out;
}

}  // namespace cobord
