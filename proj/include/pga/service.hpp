#pragma once

// Services, service families and the two built-in service algebras
// (natural-number counters and boolean registers).

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace pga {

enum class Reply
{
    t,
    f,
    d
};

std::string to_string( Reply r );

struct Service
{
    enum class Kind
    {
        empty,
        counter,
        boolreg
    };

    Kind kind = Kind::empty;
    std::uint64_t content = 0; // counter value, or 0/1 for a register

    static Service empty() { return {}; }
    static Service counter( std::uint64_t n ) { return { Kind::counter, n }; }
    static Service boolreg( bool b ) { return { Kind::boolreg, b ? 1u : 0u }; }

    friend bool operator==( const Service&, const Service& ) = default;
    friend auto operator<=>( const Service&, const Service& ) = default;
};

// Literal form: counter(3), bool(true), empty.
std::string to_string( const Service& s );

struct StepResult
{
    Reply reply;
    Service next;
};

// Counter methods: incr, decr, iszero. Register methods: set:t, set:f, get.
// Anything else, and every method sent to the empty service, replies D and
// leaves the empty service behind.
StepResult svc_step( const Service& s, std::string_view method );

using ServiceFamily = std::map<std::string, Service, std::less<>>;

// Union of the two families; a focus present in both collapses to empty.
ServiceFamily fam_compose( const ServiceFamily& u, const ServiceFamily& v );

// Drops the foci in `foci`.
ServiceFamily fam_encapsulate( const std::set<std::string>& foci, const ServiceFamily& u );

// `{c = counter(3), r = bool(true), d = empty}`; "{}" is the empty family.
// Repeated foci are composed, so they collapse to empty.
ServiceFamily parse_family( std::string_view text );
std::string to_string( const ServiceFamily& u );

enum class AlgebraId
{
    counter,
    boolreg
};

std::string to_string( AlgebraId id );
AlgebraId parse_algebra_id( std::string_view text );

struct AlgebraConfig
{
    AlgebraId algebra = AlgebraId::counter;
    std::uint64_t bound = 100;  // state enumeration cut-off for infinite carriers
    std::uint64_t qbound = 32;  // quantifier headroom above the active domain

    // Throws std::invalid_argument on zero bounds.
    void validate() const;
};

// Interpretation of sort Serv used for enumeration. New algebras plug in by
// implementing this interface; method behaviour itself lives in svc_step.
class ServiceAlgebra
{
public:
    virtual ~ServiceAlgebra() = default;

    [[nodiscard]] virtual AlgebraId id() const = 0;

    // Carrier of sort Serv, truncated at `bound` when infinite.
    [[nodiscard]] virtual std::vector<Service> carrier( std::uint64_t bound ) const = 0;

    [[nodiscard]] virtual bool finite_carrier() const = 0;
};

const ServiceAlgebra& algebra_for( AlgebraId id );

// All families over `foci` with services drawn from the algebra's carrier.
// With no foci the single empty family is produced.
std::vector<ServiceFamily> enumerate_states( const std::set<std::string>& foci, const ServiceAlgebra& alg,
                                             std::uint64_t bound );

// Streaming form; enumeration stops early when `fn` returns false.
void for_each_state( const std::set<std::string>& foci, const ServiceAlgebra& alg, std::uint64_t bound,
                     const std::function<bool( const ServiceFamily& )>& fn );

} // namespace pga
