#pragma once

// Instruction sequences of program algebra: primitive instructions, sequence
// terms built with concatenation, powers and repetition, and their canonical
// (eventually periodic) normal form.

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pga {

class ParseError : public std::runtime_error
{
public:
    // `column` is 1-based.
    ParseError( std::size_t column, const std::string& message );

    [[nodiscard]] std::size_t column() const noexcept { return _column; }
    // The message without the column prefix.
    [[nodiscard]] const std::string& detail() const noexcept { return _detail; }

    // Same error, positioned `offset` characters further into an enclosing text.
    [[nodiscard]] ParseError shifted( std::size_t offset ) const { return { _column + offset, _detail }; }

private:
    std::size_t _column;
    std::string _detail;
};

enum class InstrKind
{
    basic,
    pos_test,
    neg_test,
    jump,
    halt
};

struct Instruction
{
    InstrKind kind = InstrKind::halt;
    std::string focus;
    std::string method;
    std::uint64_t offset = 0;

    static Instruction basic( std::string focus, std::string method );
    static Instruction pos_test( std::string focus, std::string method );
    static Instruction neg_test( std::string focus, std::string method );
    static Instruction jump( std::uint64_t offset );
    static Instruction halt();

    // Basic instruction or test: something that issues f.m to a service.
    [[nodiscard]] bool is_action() const
    {
        return kind == InstrKind::basic || kind == InstrKind::pos_test || kind == InstrKind::neg_test;
    }

    friend bool operator==( const Instruction&, const Instruction& ) = default;
    friend auto operator<=>( const Instruction&, const Instruction& ) = default;
};

std::string to_string( const Instruction& instr );

// Length of an instruction sequence; std::nullopt stands for omega.
using SeqLength = std::optional<std::uint64_t>;

std::string to_string( SeqLength len );

// Immutable sequence term. Copies share structure.
class SequenceTerm
{
public:
    enum class Kind
    {
        instr,
        concat,
        power,
        repeat
    };

    static SequenceTerm instr( Instruction instr );
    static SequenceTerm concat( SequenceTerm lhs, SequenceTerm rhs );
    static SequenceTerm power( SequenceTerm base, std::uint64_t exponent );
    static SequenceTerm repeat( SequenceTerm body );

    [[nodiscard]] Kind kind() const;
    [[nodiscard]] const Instruction& instruction() const;
    // Left operand of a concatenation, or the operand of a power/repetition.
    [[nodiscard]] const SequenceTerm& left() const;
    [[nodiscard]] const SequenceTerm& right() const;
    [[nodiscard]] std::uint64_t exponent() const;

    // Structural identity (no axioms applied).
    friend bool operator==( const SequenceTerm& a, const SequenceTerm& b );

private:
    struct Node;
    explicit SequenceTerm( std::shared_ptr<const Node> node ) : _node{ std::move( node ) } {}

    std::shared_ptr<const Node> _node;
};

// Printer emits the same grammar the parser accepts.
std::string to_string( const SequenceTerm& term );

// Grammar (whitespace-insensitive):
//   seq  := item (";" item)*      item := atom suffix*     suffix := "^" nat | "^w"
//   atom := "(" seq ")" | "!" | "#" nat | ["+"|"-"] ident "." ident
// Concatenation associates to the left.
SequenceTerm parse_sequence( std::string_view text );

// Concatenation of a non-empty list of terms, associated to the left.
SequenceTerm concat_all( const std::vector<SequenceTerm>& parts );

// Foci named by the action instructions occurring in the term.
std::set<std::string> foci_of( const SequenceTerm& term );

// Largest jump offset occurring in the term (0 when there are no jumps).
std::uint64_t max_jump( const SequenceTerm& term );

// Normal form of a PGA instruction sequence: `prefix` followed, when `period`
// is non-empty, by `period` repeated forever. The period is primitive and the
// prefix is as short as possible, so two canonical sequences denote the same
// instruction sequence iff they are identical.
class CanonicalSequence
{
public:
    // Canonicalizes the given (prefix, period) pair.
    CanonicalSequence( std::vector<Instruction> prefix, std::vector<Instruction> period );

    [[nodiscard]] const std::vector<Instruction>& prefix() const { return _prefix; }
    [[nodiscard]] const std::vector<Instruction>& period() const { return _period; }
    [[nodiscard]] bool finite() const { return _period.empty(); }
    [[nodiscard]] SeqLength length() const;

    // Number of distinct positions: |prefix| + |period|.
    [[nodiscard]] std::uint64_t positions() const { return _prefix.size() + _period.size(); }

    // Maps a 1-indexed position onto 1..positions(). For finite sequences
    // the position must be within the sequence.
    [[nodiscard]] std::uint64_t representative( std::uint64_t pos ) const;

    // The instruction at a 1-indexed position.
    [[nodiscard]] const Instruction& at( std::uint64_t pos ) const;

    // Term denoting this sequence.
    [[nodiscard]] SequenceTerm to_term() const;

    friend bool operator==( const CanonicalSequence&, const CanonicalSequence& ) = default;

private:
    std::vector<Instruction> _prefix;
    std::vector<Instruction> _period;
};

std::string to_string( const CanonicalSequence& seq );

CanonicalSequence normalize( const SequenceTerm& term );

bool seq_equal( const SequenceTerm& a, const SequenceTerm& b );

SeqLength length_of( const SequenceTerm& term );

// Terms compared modulo associativity of concatenation, with powers unfolded
// by their definition. Repetition is left untouched, so X ; X^w and X^w stay
// distinct. This is the granularity at which the proof rules match terms.
struct FlatItem
{
    bool is_repeat = false;
    Instruction instr;
    std::vector<FlatItem> body;

    friend bool operator==( const FlatItem&, const FlatItem& ) = default;
};

using FlatSequence = std::vector<FlatItem>;

FlatSequence flatten( const SequenceTerm& term );
SequenceTerm unflatten( const FlatSequence& items );
bool same_modulo_association( const SequenceTerm& a, const SequenceTerm& b );

} // namespace pga
