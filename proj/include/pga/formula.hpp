#pragma once

// First-order assertions over the service-algebra signature. Free
// identifiers of sort serv are foci; other free identifiers are ordinary
// variables, read universally.

#include "pga/service.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace pga {

enum class Sort
{
    nat,
    boolean,
    serv,
    repl
};

std::string to_string( Sort s );

class SortError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class EvalError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

enum class TermKind
{
    var,
    numeral,  // natural number literal; 0 is numeral 0
    boolean,  // true / false
    reply,    // :t :f :d
    empty,    // the empty service
    succ,     // s(t)
    pred,     // p(t), with p(0) = 0
    nnc,      // counter service with content t
    reg,      // register service with content t
    derive,   // d[m](t)
    reply_of  // r[m](t)
};

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

struct TermNode
{
    TermKind kind;
    std::string name; // variable name, or method for derive / reply_of
    std::uint64_t value = 0;
    Reply reply_value = Reply::d;
    std::vector<Term> args;
};

namespace terms {
Term var( std::string name );
Term numeral( std::uint64_t n );
Term boolean( bool b );
Term reply( Reply r );
Term empty();
Term succ( Term t );
Term pred( Term t );
Term nnc( Term t );
Term reg( Term t );
Term derive( std::string method, Term t );
Term reply_of( std::string method, Term t );
} // namespace terms

enum class FormulaKind
{
    top,
    bottom,
    eq,
    neg,
    conj,
    disj,
    impl,
    exists,
    forall
};

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

struct FormulaNode
{
    FormulaKind kind;
    Term lhs;
    Term rhs;
    std::vector<Formula> sub; // one child for neg and quantifiers, two for binary connectives
    std::string var;          // bound variable
    Sort sort = Sort::nat;    // sort of the bound variable
};

namespace formulas {
Formula top();
Formula bottom();
Formula eq( Term a, Term b );
Formula neq( Term a, Term b );
Formula neg( Formula f );
Formula conj( Formula a, Formula b );
Formula disj( Formula a, Formula b );
Formula impl( Formula a, Formula b );
Formula exists( std::string var, Sort sort, Formula body );
Formula forall( std::string var, Sort sort, Formula body );
} // namespace formulas

std::string to_string( const Term& t );
std::string to_string( const Formula& f );

// Grammar: true false ~F F /\ F F \/ F F -> F, exists x:sort. F, forall x:sort. F,
// t = t, t != t; terms: identifiers, numerals, :t :f :d, true false, empty,
// s(t) p(t) nnc(t) reg(t) d[m](t) r[m](t). Sorts: nat bool serv repl.
// Precedence from loosest: ->, \/, /\, ~; quantifier bodies extend to the right.
Formula parse_formula( std::string_view text );

// Sorts of the free identifiers. Identifiers whose sort is not forced by
// their use default to serv. Throws SortError on ill-sorted formulas.
std::map<std::string, Sort> free_variables( const Formula& f );

// Free identifiers of sort serv.
std::set<std::string> free_foci( const Formula& f );

// Free identifiers, sorts not considered.
std::set<std::string> free_names( const Formula& f );

// Capture-avoiding substitution of `replacement` for the free occurrences of
// `name`; bound variables are renamed when they would capture.
Formula substitute( const Formula& f, const std::string& name, const Term& replacement );

// P[d[m](f)/f]
Formula substitute_derive( const Formula& f, const std::string& focus, const std::string& method );

// P[y/x]
Formula rename( const Formula& f, const std::string& from, const std::string& to );

// Syntactic equality up to renaming of bound variables; numerals and
// successor chains over numerals are identified.
bool alpha_equal( const Formula& a, const Formula& b );

using Value = std::variant<std::uint64_t, bool, Reply, Service>;
using Valuation = std::map<std::string, Value, std::less<>>;

std::string to_string( const Value& v );
std::string to_string( const Valuation& v );

enum class Truth
{
    false_,
    true_,
    unknown
};

std::string to_string( Truth t );

// Standard satisfaction. Quantifiers over infinite carriers range from 0 up
// to the largest natural in the state, valuation and formula plus cfg.qbound.
// When that headroom is too small to guarantee the answer, a failed search
// yields unknown instead of a definite value.
Truth eval_formula( const Formula& f, const ServiceFamily& state, const AlgebraConfig& cfg,
                    const Valuation& valuation = {} );

// Headroom above the active domain that makes bounded quantification exact
// for this formula: (2t + 2) * 3^k for term depth t and quantifier rank k.
std::uint64_t required_headroom( const Formula& f );

// Enumerates every state over `foci` together with every valuation of
// `vars` (nat up to cfg.bound; bool and repl exhaustively). Returns true when
// some carrier was truncated at cfg.bound. Stops early when `fn` returns false.
bool for_each_assignment( const std::set<std::string>& foci, const std::map<std::string, Sort>& vars,
                          const AlgebraConfig& cfg,
                          const std::function<bool( const ServiceFamily&, const Valuation& )>& fn );

struct EntailVerdict
{
    enum class Kind
    {
        valid,
        invalid,
        bounded_valid,
        unknown
    };

    Kind kind = Kind::unknown;
    std::uint64_t bound = 0;                     // for bounded_valid
    std::optional<ServiceFamily> witness_state;  // for invalid
    Valuation witness_valuation;                 // for invalid
    std::string reason;                          // for unknown
};

std::string to_string( const EntailVerdict& v );

// Decides A |= forall (P -> Q) by enumeration.
EntailVerdict entails( const Formula& p, const Formula& q, const AlgebraConfig& cfg );

} // namespace pga
