#ifndef MEADOW_SUITES_HPP
#define MEADOW_SUITES_HPP

// Runs a named axiom suite against a structure.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "meadow/botworld.hpp"
#include "meadow/errors.hpp"
#include "meadow/semantics.hpp"
#include "meadow/soundness.hpp"
#include "meadow/structures.hpp"

namespace meadow {

struct SuiteOptions {
  /// Valuations drawn for infinite carriers.
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
};

inline const char* const suite_names[] = {"eqcl",     "ftcpm",     "assertions",
                                          "rationals", "soundness", "cm"};

/// Suites: eqcl, ftcpm, assertions, rationals, soundness, cm. Only
/// `rationals` samples an infinite carrier; the rest enumerate.
inline SuiteReport run_axiom_suite(std::string_view name, const Structure& s,
                                   SuiteOptions opt = {}) {
  Sampling sampling{opt.samples, opt.seed};
  if (name == "eqcl") return run_eqcl_suite();
  if (name == "cm") return run_cm_suite(s, CmOptions{200, opt.seed});
  if (s.is_enlarged())
    throw EnlargedStructure("suite '" + std::string(name) + "' needs a structure without bot");
  if (name == "rationals") return run_rationals_suite(s, sampling);
  if (name == "ftcpm") return run_ftcpm_suite(s);
  if (name == "assertions") return run_assertions_suite(s);
  if (name == "soundness") return run_soundness_suite(s, SoundnessOptions{500, 4, opt.seed});
  throw Error("unknown suite '" + std::string(name) + "'");
}

}  // namespace meadow

#endif  // MEADOW_SUITES_HPP
