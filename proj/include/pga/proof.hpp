#pragma once

// Proof trees for asserted instruction sequences and their checker.

#include "pga/asserted.hpp"
#include "pga/formula.hpp"
#include "pga/service.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pga {

enum class RuleId
{
    a1, a2, a3, a4, a5, a6, a7, a8, a9, a10, a11,
    r1, r2, r3, r4, r5, r6, r7, r8, r9, r10,
    hyp,
    rep_intro
};

// `A1` … `A11`, `R1` … `R10`, `HYP`, `REP`.
std::string to_string( RuleId id );
std::optional<RuleId> parse_rule_id( std::string_view text );
bool is_axiom( RuleId id );

struct ProofNode;
using ProofPtr = std::shared_ptr<const ProofNode>;

struct ProofNode
{
    RuleId rule = RuleId::a11;
    // Required for axioms; optional for rules whose conclusion follows from
    // the premises; absent for HYP.
    std::optional<AssertedSeq> conclusion;
    std::vector<ProofPtr> premises;

    // Repetition: hypotheses, the index (1-based) of the concluded one and
    // one subproof per hypothesis.
    std::vector<AssertedSeq> hyps;
    std::uint64_t k = 0;
    std::vector<ProofPtr> subproofs;

    // HYP: 1-based index into the enclosing repetition's hypotheses.
    std::uint64_t hyp_index = 0;

    // Substitution [to/from].
    std::string rename_from;
    std::string rename_to;

    // Consequence obligations P -> P' and Q' -> Q, when written out.
    std::optional<std::pair<Formula, Formula>> strengthen;
    std::optional<std::pair<Formula, Formula>> weaken;

    std::size_t line = 0; // 1-based source line, 0 when built in code
};

// Proof files hold one parenthesized node per rule application:
//   (A9 {1 | P} "#3" {3 | P})
//   (R1 <node> <node> => {b | P} "S1 ; S2" {e | Q})
//   (R5 hyps [{b | P} "S^w" {0 | Q} ...] k 1 subproofs [<node> ...])
//   (HYP 1)
//   (R9 [y/x] <node> => ...)
//   (R10 "P -> P'" <node> "Q' -> Q" => ...)
//   (REP <node> => ...)
// `;` starts a comment that runs to the end of the line.
ProofPtr parse_proof( std::string_view text );

std::string to_string( const ProofNode& node );

struct CheckFailure
{
    std::string path; // e.g. `R10 > R8 > R5 subproof 1 > R6`, with the source line
    std::string reason;
};

struct CheckResult
{
    bool accepted = false;
    std::optional<AssertedSeq> conclusion;
    std::vector<CheckFailure> failures;
    // Entailments that were only verified up to the enumeration bound.
    std::vector<std::string> assumptions;
};

// `strict` rejects entailments that only hold up to the enumeration bound.
CheckResult check_proof( const ProofNode& root, const AlgebraConfig& cfg, bool strict = false );

} // namespace pga
