#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "maxreg/automaton.hpp"
#include "maxreg/words.hpp"

namespace maxreg {

enum class Verdict : std::uint8_t { Accept, Reject, Unknown };

const char* to_string(Verdict v);

/// Verdict plus the per-counter boundedness of the tail output sequences
/// (nullopt where the analysis could not decide).
struct MembershipResult {
  Verdict verdict = Verdict::Unknown;
  std::vector<std::optional<bool>> bounded;
  std::string note;
};

struct RampOptions {
  std::size_t horizon = 64;  ///< blocks searched for the block-state period
  std::size_t window = 8;    ///< minimum number of blocks in the certified period window
  std::size_t ceiling = 1'000'000;  ///< cap on the lcm of v-cycle lengths
};

/// Exact acceptance on u·v^ω. Throws InputError on track mismatch and
/// UnsupportedError on guarded automata.
MembershipResult lasso_membership(const MaxAutomaton& a, const LassoWord& w);

/// Sound three-valued acceptance on a ramp word: Accept/Reject are proven,
/// Unknown when some needed atom is neither certified bounded nor unbounded.
MembershipResult ramp_certify(const MaxAutomaton& a, const RampWord& w, const RampOptions& options = {});

MembershipResult membership(const MaxAutomaton& a, const InfiniteWord& w, const RampOptions& options = {});

/// Evaluates the acceptance condition under partial atom knowledge.
Verdict evaluate_partial(const Acceptance& f, const std::vector<std::optional<bool>>& bounded);

/// Atom verdict map for certificates: "c=bounded d=unbounded e=unknown".
std::string format_atoms(const MaxAutomaton& a, const MembershipResult& r);

}  // namespace maxreg
