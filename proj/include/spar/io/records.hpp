#pragma once

#include <string>

#include "json.hpp"
#include "spar/asymptotics/tail.hpp"
#include "spar/copulas/copula.hpp"

namespace spar::io {

// JSON record for a dependence classification of one (family, corner) pair.
inline nlohmann::json classify_record(const copulas::CopulaModel& c,
                                      const asymptotics::AsymptoticSummary& s) {
  nlohmann::json j;
  j["family"] = copulas::family_name(c.family());
  j["corner"] = s.corner;
  if (s.kappa_infinite) {
    j["kappa"] = "inf";
  } else {
    j["kappa"] = s.kappa;
  }
  if (s.chi) j["chi"] = *s.chi;
  if (s.beta_pair) j["beta"] = {s.beta_pair->first, s.beta_pair->second};
  j["class"] = asymptotics::class_name(s.dependence_class);
  return j;
}

}  // namespace spar::io
