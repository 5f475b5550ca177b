#pragma once

// Program-counter interpreter for instruction sequence segments and the
// semantic checker for asserted sequences built on it.

#include "pga/asserted.hpp"
#include "pga/formula.hpp"
#include "pga/sequence.hpp"
#include "pga/service.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pga {

struct Outcome
{
    enum class Kind
    {
        halted,
        exited,
        inactive,
        budget_exhausted
    };

    Kind kind = Kind::inactive;
    std::uint64_t offset = 0; // exit offset, >= 1 when exited
    ServiceFamily state;      // final state when halted or exited

    static Outcome halted( ServiceFamily state );
    static Outcome exited( std::uint64_t offset, ServiceFamily state );
    static Outcome inactive();
    static Outcome budget_exhausted();

    friend bool operator==( const Outcome&, const Outcome& ) = default;
};

// `halted {c = counter(0)}`, `exited 1 {…}`, `inactive`, `budget exhausted`.
std::string to_string( const Outcome& o );

// Executes the segment from position `entry` (1-indexed) on `state`.
// Infinite segments are tracked modulo their period; a repeated
// (position, state) pair means the run never leaves, which counts as
// inactive. Runs that keep growing a counter are cut off after
// bound * positions * (largest initial counter content + 1) steps.
// Throws std::out_of_range when the entry lies beyond a finite segment.
Outcome run_segment( const CanonicalSequence& seq, std::uint64_t entry, const ServiceFamily& state,
                     std::uint64_t bound = 100 );
Outcome run_segment( const SequenceTerm& seq, std::uint64_t entry, const ServiceFamily& state,
                     std::uint64_t bound = 100 );

struct Verdict
{
    enum class Kind
    {
        holds,
        fails,
        unknown
    };

    Kind kind = Kind::unknown;
    bool bounded = false;      // holds only up to the enumeration bound
    std::uint64_t bound = 0;
    std::optional<ServiceFamily> witness_state;
    Valuation witness_valuation;
    std::optional<Outcome> witness_outcome;
    std::string reason;
};

// `HOLDS`, `HOLDS (bounded, B=100)`, `FAILS: …`, `UNKNOWN: …`.
std::string to_string( const Verdict& v );

// Checks the asserted sequence by running it from every enumerated state
// that satisfies the precondition. Acceptable outcomes: inactive; for exit
// e > 0, leaving by offset e into a state satisfying Q; for exit 0, halting
// in a state satisfying Q.
Verdict holds( const AssertedSeq& phi, const AlgebraConfig& cfg );

struct PostImage
{
    std::vector<ServiceFamily> states; // sorted, without duplicates
    Formula formula;                   // disjunction describing `states`
    bool bounded = false;
};

// Every state reachable through the given exit from a state satisfying P.
// Throws std::domain_error when some P-run does something other than become
// inactive or leave through that exit, since then no postcondition exists.
PostImage strongest_post( const Formula& pre, const SequenceTerm& seq, std::uint64_t entry, std::uint64_t exit,
                          const AlgebraConfig& cfg );

// Formula fixing each focus of the state to its service, e.g.
// `c = nnc(3) /\ r = reg(true)`; `true` for the empty family.
Formula describe_state( const ServiceFamily& state );

} // namespace pga
