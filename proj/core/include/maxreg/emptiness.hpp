#pragma once

#include <optional>
#include <string>

#include "maxreg/automaton.hpp"
#include "maxreg/membership.hpp"
#include "maxreg/words.hpp"

namespace maxreg {

enum class EmptinessStatus : std::uint8_t { Empty, Nonempty, Unknown };

const char* to_string(EmptinessStatus s);

struct EmptinessOptions {
  std::size_t max_prefix = 4;   ///< |u|
  std::size_t max_period = 4;   ///< |v|
  std::size_t max_suffix = 4;   ///< |w| of ramp candidates
  std::size_t budget = 5000;    ///< membership tests before giving up
  std::size_t max_uautomaton_states = 200'000;
  RampOptions ramp;
};

struct EmptinessResult {
  EmptinessStatus status = EmptinessStatus::Unknown;
  std::optional<InfiniteWord> witness;
  std::string reason;       ///< why empty, or why the search gave up
  std::string certificate;  ///< word spec and atom verdicts of the witness
  std::size_t candidates = 0;
};

/// Sound search: Empty and Nonempty are proven, Unknown otherwise.
/// Throws InputError on invalid automata.
EmptinessResult emptiness_search(const MaxAutomaton& a, const EmptinessOptions& options = {});

/// Replays a nonempty certificate through membership.
bool check_certificate(const MaxAutomaton& a, const EmptinessResult& r, const RampOptions& options = {});

}  // namespace maxreg
