#pragma once

// Asserted instruction sequences {b | P} S {e | Q}: entry b, precondition P,
// segment S, exit offset e (0 = terminate inside S) and postcondition Q.

#include "pga/formula.hpp"
#include "pga/sequence.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pga {

struct AssertedSeq
{
    std::uint64_t entry;
    Formula pre;
    SequenceTerm seq;
    std::uint64_t exit;
    Formula post;
};

// `{1 | true} "#2 ; !" {2 | true}`, printed with the sequence quoted.
std::string to_string( const AssertedSeq& a );

// Accepts the sequence with or without quotes. The closing brace may list
// several exits (`{1, 2 | Q}`); use parse_asserted_multi for those.
AssertedSeq parse_asserted( std::string_view text );
std::vector<AssertedSeq> parse_asserted_multi( std::string_view text );

// One asserted sequence per exit. Throws std::invalid_argument when `exits`
// is empty.
std::vector<AssertedSeq> expand_multi_exit( std::uint64_t entry, const Formula& pre, const SequenceTerm& seq,
                                            const std::vector<std::uint64_t>& exits, const Formula& post );

// Reads one asserted sequence starting at `pos` in `text` and advances `pos`
// past it. Used by the proof file reader.
std::vector<AssertedSeq> read_asserted( std::string_view text, std::size_t& pos );

} // namespace pga
