#include "cayjoin/error.hpp"

#include <cstdlib>
#include <string>

#include "cayjoin/caps.hpp"

namespace cayjoin {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::TableNotGroup: return "TableNotGroup";
    case Errc::OrderCapExceeded: return "OrderCapExceeded";
    case Errc::InvalidReps: return "InvalidReps";
    case Errc::NotAHomomorphism: return "NotAHomomorphism";
    case Errc::GeneratorsInsufficient: return "GeneratorsInsufficient";
    case Errc::ClosureCapExceeded: return "ClosureCapExceeded";
    case Errc::AsymmetricConnectionSet: return "AsymmetricConnectionSet";
    case Errc::IdentityInConnectionSet: return "IdentityInConnectionSet";
    case Errc::SizeCapExceeded: return "SizeCapExceeded";
    case Errc::LambdaNotEpimorphism: return "LambdaNotEpimorphism";
    case Errc::SigmaNotPartition: return "SigmaNotPartition";
    case Errc::ThetaNotEpimorphism: return "ThetaNotEpimorphism";
    case Errc::TheoremChoicesUnavailable: return "TheoremChoicesUnavailable";
    case Errc::NotClosed: return "NotClosed";
    case Errc::NotRegular: return "NotRegular";
    case Errc::SynthesisFailed: return "SynthesisFailed";
    case Errc::VerificationFailed: return "VerificationFailed";
    case Errc::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

bool set_cap(Caps& caps, std::string_view key, std::size_t value) {
  if (key == "group_order" || key == "order") {
    caps.group_order = value;
  } else if (key == "closure") {
    caps.closure = value;
  } else if (key == "iso_vertices" || key == "iso") {
    caps.iso_vertices = value;
  } else if (key == "aut_vertices" || key == "aut") {
    caps.aut_vertices = value;
  } else if (key == "search_budget" || key == "budget") {
    caps.search_budget = value;
  } else {
    return false;
  }
  return true;
}

Caps apply_cap_overrides(Caps base, std::string_view overrides) {
  std::size_t pos = 0;
  while (pos < overrides.size()) {
    std::size_t end = overrides.find(',', pos);
    if (end == std::string_view::npos) end = overrides.size();
    std::string_view item = overrides.substr(pos, end - pos);
    pos = end + 1;
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw Error(Errc::InvalidInput, "cap override '" + std::string(item) + "' is not key=value");
    }
    const std::string key(item.substr(0, eq));
    const std::string value(item.substr(eq + 1));
    std::size_t parsed = 0;
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
      parsed = static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      throw Error(Errc::InvalidInput, "cap override '" + key + "' has non-numeric value '" + value + "'");
    }
    if (!set_cap(base, key, parsed)) {
      throw Error(Errc::InvalidInput, "unknown cap '" + key + "'");
    }
  }
  return base;
}

Caps apply_env_caps(Caps base) {
  if (const char* env = std::getenv("XJOIN_CAPS")) {
    return apply_cap_overrides(base, env);
  }
  return base;
}

}  // namespace cayjoin
