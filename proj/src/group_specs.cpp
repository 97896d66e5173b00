#include <set>
#include <string>

#include "cayjoin/error.hpp"
#include "cayjoin/groups.hpp"

namespace cayjoin::groups {

namespace {

std::string power_name(const std::string& gen, int k) {
  if (k == 0) return "";
  if (k == 1) return gen;
  return gen + std::to_string(k);
}

void check_order(std::size_t order, const Caps& caps) {
  if (order > caps.group_order) {
    throw Error(Errc::OrderCapExceeded,
                "order " + std::to_string(order) + " exceeds cap " + std::to_string(caps.group_order));
  }
}

}  // namespace

FiniteGroup cyclic(int n, const std::string& generator, const Caps& caps) {
  if (n < 1) throw Error(Errc::InvalidInput, "cyclic order must be positive");
  check_order(static_cast<std::size_t>(n), caps);
  std::vector<std::string> names(n);
  std::vector<std::vector<Elem>> table(n, std::vector<Elem>(n));
  for (int i = 0; i < n; ++i) {
    names[i] = i == 0 ? "e" : power_name(generator, i);
    for (int j = 0; j < n; ++j) table[i][j] = (i + j) % n;
  }
  FiniteGroup g(std::move(names), table, caps.group_order);
  if (n > 1) g.set_named_generators({{generator, 1}});
  return g;
}

FiniteGroup dihedral(int order, const Caps& caps) {
  if (order < 2 || order % 2 != 0) throw Error(Errc::InvalidInput, "dihedral order must be even and >= 2");
  check_order(static_cast<std::size_t>(order), caps);
  const int n = order / 2;
  std::vector<std::string> names(order);
  std::vector<std::vector<Elem>> table(order, std::vector<Elem>(order));
  // x^i y^j has index j*n + i; y x^k = x^-k y.
  for (int j = 0; j < 2; ++j) {
    for (int i = 0; i < n; ++i) {
      std::string nm = power_name("x", i) + (j ? "y" : "");
      names[j * n + i] = nm.empty() ? "e" : nm;
    }
  }
  for (int a = 0; a < order; ++a) {
    const int i = a % n, j = a / n;
    for (int b = 0; b < order; ++b) {
      const int k = b % n, l = b / n;
      const int rot = ((j ? i - k : i + k) % n + n) % n;
      table[a][b] = ((j + l) % 2) * n + rot;
    }
  }
  FiniteGroup g(std::move(names), table, caps.group_order);
  std::vector<std::pair<std::string, Elem>> gens;
  if (n > 1) gens.emplace_back("x", 1);
  gens.emplace_back("y", n);
  g.set_named_generators(std::move(gens));
  return g;
}

FiniteGroup quaternion8() {
  // Units 1, i, j, k with sign bit; index = 2*unit + sign.
  static constexpr int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static constexpr int sign_mul[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  const char* units[4] = {"1", "i", "j", "k"};
  std::vector<std::string> names(8);
  std::vector<std::vector<Elem>> table(8, std::vector<Elem>(8));
  for (int a = 0; a < 8; ++a) {
    names[a] = std::string(a % 2 ? "-" : "") + units[a / 2];
    for (int b = 0; b < 8; ++b) {
      const int u = a / 2, v = b / 2;
      const int sign = (a % 2) ^ (b % 2) ^ sign_mul[u][v];
      table[a][b] = 2 * unit_mul[u][v] + sign;
    }
  }
  FiniteGroup g(std::move(names), table);
  g.set_named_generators({{"i", 2}, {"j", 4}});
  return g;
}

FiniteGroup direct_product(const std::vector<FiniteGroup>& factors, const Caps& caps) {
  if (factors.empty()) return cyclic(1, "g", caps);
  std::size_t order = 1;
  for (const auto& f : factors) {
    order *= static_cast<std::size_t>(f.order());
    check_order(order, caps);
  }
  const std::size_t nf = factors.size();
  auto digits = [&](std::size_t idx) {
    std::vector<Elem> d(nf);
    for (std::size_t i = 0; i < nf; ++i) {
      d[i] = static_cast<Elem>(idx % factors[i].order());
      idx /= factors[i].order();
    }
    return d;
  };
  auto compose = [&](const std::vector<Elem>& d) {
    std::size_t idx = 0;
    for (std::size_t i = nf; i-- > 0;) idx = idx * factors[i].order() + d[i];
    return static_cast<Elem>(idx);
  };

  // Names: concatenate non-identity components; fall back to tuples on clashes.
  std::vector<std::string> names(order);
  std::set<std::string> seen;
  bool clash = false;
  for (std::size_t idx = 0; idx < order; ++idx) {
    const auto d = digits(idx);
    std::string nm;
    for (std::size_t i = 0; i < nf; ++i) {
      if (d[i] != factors[i].identity()) nm += factors[i].name(d[i]);
    }
    if (nm.empty()) nm = "e";
    if (!seen.insert(nm).second) clash = true;
    names[idx] = nm;
  }
  if (clash) {
    for (std::size_t idx = 0; idx < order; ++idx) {
      const auto d = digits(idx);
      std::string nm = "(";
      for (std::size_t i = 0; i < nf; ++i) nm += (i ? "," : "") + factors[i].name(d[i]);
      names[idx] = nm + ")";
    }
  }

  std::vector<std::vector<Elem>> table(order, std::vector<Elem>(order));
  for (std::size_t a = 0; a < order; ++a) {
    const auto da = digits(a);
    for (std::size_t b = 0; b < order; ++b) {
      const auto db = digits(b);
      std::vector<Elem> dc(nf);
      for (std::size_t i = 0; i < nf; ++i) dc[i] = factors[i].mul(da[i], db[i]);
      table[a][b] = compose(dc);
    }
  }
  FiniteGroup g(names, table, caps.group_order);

  std::vector<std::pair<std::string, Elem>> gens;
  for (std::size_t i = 0; i < nf; ++i) {
    for (const auto& [gname, gelem] : factors[i].named_generators()) {
      std::vector<Elem> d(nf);
      for (std::size_t j = 0; j < nf; ++j) d[j] = factors[j].identity();
      d[i] = gelem;
      const Elem e = compose(d);
      gens.emplace_back(g.name(e), e);
    }
  }
  g.set_named_generators(std::move(gens));
  return g;
}

FiniteGroup elementary_abelian(int p, int k, const Caps& caps) {
  if (p < 2 || k < 1 || k > 26) throw Error(Errc::InvalidInput, "elementary abelian needs p >= 2 and 1 <= k <= 26");
  for (int d = 2; d * d <= p; ++d) {
    if (p % d == 0) throw Error(Errc::InvalidInput, "elementary abelian needs a prime p");
  }
  std::size_t order = 1;
  for (int i = 0; i < k; ++i) {
    order *= static_cast<std::size_t>(p);
    check_order(order, caps);
  }
  std::vector<FiniteGroup> factors;
  for (int i = 0; i < k; ++i) factors.push_back(cyclic(p, std::string(1, static_cast<char>('a' + i)), caps));
  return direct_product(factors, caps);
}

FiniteGroup group_from_spec(const GroupSpec& spec, const Caps& caps) {
  switch (spec.kind) {
    case GroupSpec::Kind::Table: {
      FiniteGroup g(spec.names, spec.table, caps.group_order);
      return g;
    }
    case GroupSpec::Kind::Cyclic:
      return cyclic(spec.order, spec.generator.empty() ? "g" : spec.generator, caps);
    case GroupSpec::Kind::Dihedral:
      return dihedral(spec.order, caps);
    case GroupSpec::Kind::Quaternion8:
      return quaternion8();
    case GroupSpec::Kind::ElementaryAbelian:
      return elementary_abelian(spec.p, spec.k, caps);
    case GroupSpec::Kind::Product: {
      std::vector<FiniteGroup> factors;
      for (const auto& f : spec.factors) factors.push_back(group_from_spec(f, caps));
      return direct_product(factors, caps);
    }
  }
  throw Error(Errc::InvalidInput, "unknown group kind");
}

}  // namespace cayjoin::groups
