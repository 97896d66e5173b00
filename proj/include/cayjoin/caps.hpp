#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace cayjoin {

/// Size limits for the exhaustive algorithms. Everything here enumerates
/// explicitly, so these bound memory and runtime rather than correctness.
struct Caps {
  std::size_t group_order = 512;     // exhaustive associativity check is cubic
  std::size_t closure = 20000;       // materialized permutation group elements
  std::size_t iso_vertices = 64;     // graph isomorphism backtracking
  std::size_t aut_vertices = 24;     // automorphism group enumeration
  std::size_t search_budget = 100000;  // lift search candidate evaluations
};

/// Applies "key=value,key=value" overrides. Keys: group_order (alias order),
/// closure, iso_vertices (alias iso), aut_vertices (alias aut),
/// search_budget (alias budget). Throws Error(InvalidInput) on bad input.
Caps apply_cap_overrides(Caps base, std::string_view overrides);

/// Reads XJOIN_CAPS from the environment, if set.
Caps apply_env_caps(Caps base);

/// Sets one cap by name; returns false for an unknown key.
bool set_cap(Caps& caps, std::string_view key, std::size_t value);

}  // namespace cayjoin
