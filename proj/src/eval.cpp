#include "pga/formula.hpp"

#include <algorithm>

namespace pga {

std::string to_string( const Value& v )
{
    struct Printer
    {
        std::string operator()( std::uint64_t n ) const { return std::to_string( n ); }
        std::string operator()( bool b ) const { return b ? "true" : "false"; }
        std::string operator()( Reply r ) const { return r == Reply::t ? ":t" : r == Reply::f ? ":f" : ":d"; }
        std::string operator()( const Service& s ) const { return to_string( s ); }
    };
    return std::visit( Printer{}, v );
}

std::string to_string( const Valuation& v )
{
    std::string out = "{";
    bool first = true;
    for ( const auto& [ name, value ] : v )
    {
        if ( !first )
            out += ", ";
        first = false;
        out += name + " = " + to_string( value );
    }
    return out + "}";
}

std::string to_string( Truth t )
{
    switch ( t )
    {
    case Truth::false_:
        return "false";
    case Truth::true_:
        return "true";
    case Truth::unknown:
        return "unknown";
    }
    return "?";
}

namespace {

std::uint64_t term_depth( const Term& t )
{
    return t->args.empty() ? 1 : 1 + term_depth( t->args[ 0 ] );
}

void measure( const Formula& f, std::uint64_t& depth, std::uint64_t& rank )
{
    switch ( f->kind )
    {
    case FormulaKind::top:
    case FormulaKind::bottom:
        return;
    case FormulaKind::eq:
        depth = std::max( { depth, term_depth( f->lhs ), term_depth( f->rhs ) } );
        return;
    case FormulaKind::exists:
    case FormulaKind::forall:
    {
        std::uint64_t inner_depth = 0, inner_rank = 0;
        measure( f->sub[ 0 ], inner_depth, inner_rank );
        depth = std::max( depth, inner_depth );
        rank = std::max( rank, inner_rank + 1 );
        return;
    }
    default:
        for ( const auto& s : f->sub )
        {
            std::uint64_t d = 0, r = 0;
            measure( s, d, r );
            depth = std::max( depth, d );
            rank = std::max( rank, r );
        }
    }
}

std::uint64_t largest_numeral( const Term& t )
{
    std::uint64_t best = t->kind == TermKind::numeral ? t->value : 0;
    for ( const auto& a : t->args )
        best = std::max( best, largest_numeral( a ) );
    return best;
}

std::uint64_t largest_numeral( const Formula& f )
{
    std::uint64_t best = 0;
    if ( f->kind == FormulaKind::eq )
        return std::max( largest_numeral( f->lhs ), largest_numeral( f->rhs ) );
    for ( const auto& s : f->sub )
        best = std::max( best, largest_numeral( s ) );
    return best;
}

std::uint64_t natural_in( const Value& v )
{
    if ( const auto* n = std::get_if<std::uint64_t>( &v ) )
        return *n;
    if ( const auto* s = std::get_if<Service>( &v ) )
        return s->kind == Service::Kind::counter ? s->content : 0;
    return 0;
}

Truth kleene_not( Truth t )
{
    if ( t == Truth::unknown )
        return t;
    return t == Truth::true_ ? Truth::false_ : Truth::true_;
}

class Evaluator
{
public:
    Evaluator( const Formula& f, const ServiceFamily& state, const AlgebraConfig& cfg, const Valuation& valuation )
        : _state{ state }, _cfg{ cfg }, _valuation{ valuation }
    {
        _decisive = cfg.qbound >= required_headroom( f );
        _base = largest_numeral( f );
        for ( const auto& entry : state )
            _base = std::max( _base, natural_in( entry.second ) );
        for ( const auto& entry : valuation )
            _base = std::max( _base, natural_in( entry.second ) );
    }

    Truth formula( const Formula& f )
    {
        switch ( f->kind )
        {
        case FormulaKind::top:
            return Truth::true_;
        case FormulaKind::bottom:
            return Truth::false_;
        case FormulaKind::eq:
            return term( f->lhs ) == term( f->rhs ) ? Truth::true_ : Truth::false_;
        case FormulaKind::neg:
            return kleene_not( formula( f->sub[ 0 ] ) );
        case FormulaKind::conj:
        {
            Truth a = formula( f->sub[ 0 ] );
            if ( a == Truth::false_ )
                return a;
            Truth b = formula( f->sub[ 1 ] );
            if ( b == Truth::false_ )
                return b;
            return a == Truth::true_ && b == Truth::true_ ? Truth::true_ : Truth::unknown;
        }
        case FormulaKind::disj:
        {
            Truth a = formula( f->sub[ 0 ] );
            if ( a == Truth::true_ )
                return a;
            Truth b = formula( f->sub[ 1 ] );
            if ( b == Truth::true_ )
                return b;
            return a == Truth::false_ && b == Truth::false_ ? Truth::false_ : Truth::unknown;
        }
        case FormulaKind::impl:
        {
            Truth a = kleene_not( formula( f->sub[ 0 ] ) );
            if ( a == Truth::true_ )
                return a;
            Truth b = formula( f->sub[ 1 ] );
            if ( b == Truth::true_ )
                return b;
            return a == Truth::false_ && b == Truth::false_ ? Truth::false_ : Truth::unknown;
        }
        case FormulaKind::exists:
        case FormulaKind::forall:
            return quantifier( f );
        }
        return Truth::unknown;
    }

private:
    const ServiceFamily& _state;
    const AlgebraConfig& _cfg;
    const Valuation& _valuation;
    std::vector<std::pair<std::string, Value>> _bound;
    bool _decisive = true;
    std::uint64_t _base = 0;

    Value lookup( const std::string& name ) const
    {
        for ( auto it = _bound.rbegin(); it != _bound.rend(); ++it )
            if ( it->first == name )
                return it->second;
        if ( auto it = _valuation.find( name ); it != _valuation.end() )
            return it->second;
        if ( auto it = _state.find( name ); it != _state.end() )
            return it->second;
        throw EvalError{ "'" + name + "' is not bound in the state" };
    }

    template <typename T>
    static T as( const Value& v, const Term& t )
    {
        if ( const auto* x = std::get_if<T>( &v ) )
            return *x;
        throw EvalError{ "ill-sorted term '" + to_string( t ) + "'" };
    }

    Value term( const Term& t )
    {
        switch ( t->kind )
        {
        case TermKind::var:
            return lookup( t->name );
        case TermKind::numeral:
            return t->value;
        case TermKind::boolean:
            return t->value != 0;
        case TermKind::reply:
            return t->reply_value;
        case TermKind::empty:
            return Service::empty();
        case TermKind::succ:
            return as<std::uint64_t>( term( t->args[ 0 ] ), t ) + 1;
        case TermKind::pred:
        {
            std::uint64_t n = as<std::uint64_t>( term( t->args[ 0 ] ), t );
            return n == 0 ? n : n - 1;
        }
        case TermKind::nnc:
            return Service::counter( as<std::uint64_t>( term( t->args[ 0 ] ), t ) );
        case TermKind::reg:
            return Service::boolreg( as<bool>( term( t->args[ 0 ] ), t ) );
        case TermKind::derive:
            return svc_step( as<Service>( term( t->args[ 0 ] ), t ), t->name ).next;
        case TermKind::reply_of:
            return svc_step( as<Service>( term( t->args[ 0 ] ), t ), t->name ).reply;
        }
        throw EvalError{ "unknown term" };
    }

    // Largest natural in scope, the anchor for bounded quantifier ranges.
    std::uint64_t active_bound() const
    {
        std::uint64_t k = _base;
        for ( const auto& entry : _bound )
            k = std::max( k, natural_in( entry.second ) );
        return k;
    }

    std::vector<Value> domain( Sort sort, bool& cut ) const
    {
        std::vector<Value> out;
        const std::uint64_t top = active_bound() + _cfg.qbound;
        switch ( sort )
        {
        case Sort::nat:
            cut = true;
            for ( std::uint64_t n = 0; n <= top; ++n )
                out.emplace_back( n );
            break;
        case Sort::boolean:
            out = { false, true };
            break;
        case Sort::repl:
            out = { Reply::t, Reply::f, Reply::d };
            break;
        case Sort::serv:
        {
            const ServiceAlgebra& alg = algebra_for( _cfg.algebra );
            cut = !alg.finite_carrier();
            for ( const Service& s : alg.carrier( top ) )
                out.emplace_back( s );
            break;
        }
        }
        return out;
    }

    Truth quantifier( const Formula& f )
    {
        const bool is_exists = f->kind == FormulaKind::exists;
        bool cut = false;
        const std::vector<Value> values = domain( f->sort, cut );
        bool saw_unknown = false;
        for ( const Value& v : values )
        {
            _bound.emplace_back( f->var, v );
            Truth t = formula( f->sub[ 0 ] );
            _bound.pop_back();
            if ( t == Truth::unknown )
                saw_unknown = true;
            else if ( ( t == Truth::true_ ) == is_exists )
                return t;
        }
        if ( saw_unknown || ( cut && !_decisive ) )
            return Truth::unknown;
        return is_exists ? Truth::false_ : Truth::true_;
    }
};

void for_each_valuation( std::vector<std::pair<std::string, Sort>>::const_iterator it,
                         std::vector<std::pair<std::string, Sort>>::const_iterator end, std::uint64_t bound,
                         Valuation& current, const std::function<bool( const Valuation& )>& fn, bool& stop )
{
    if ( stop )
        return;
    if ( it == end )
    {
        stop = !fn( current );
        return;
    }
    std::vector<Value> values;
    switch ( it->second )
    {
    case Sort::nat:
        for ( std::uint64_t n = 0; n <= bound; ++n )
            values.emplace_back( n );
        break;
    case Sort::boolean:
        values = { false, true };
        break;
    case Sort::repl:
        values = { Reply::t, Reply::f, Reply::d };
        break;
    case Sort::serv:
        break;
    }
    for ( const Value& v : values )
    {
        current[ it->first ] = v;
        for_each_valuation( std::next( it ), end, bound, current, fn, stop );
        if ( stop )
            break;
    }
    current.erase( it->first );
}

} // namespace

std::uint64_t required_headroom( const Formula& f )
{
    std::uint64_t depth = 0, rank = 0;
    measure( f, depth, rank );
    if ( rank == 0 )
        return 0;
    std::uint64_t scale = 1;
    for ( std::uint64_t i = 0; i < rank && scale < ( std::uint64_t{ 1 } << 40 ); ++i )
        scale *= 3;
    return ( 2 * depth + 2 ) * scale;
}

Truth eval_formula( const Formula& f, const ServiceFamily& state, const AlgebraConfig& cfg,
                    const Valuation& valuation )
{
    for ( const auto& [ name, sort ] : free_variables( f ) )
    {
        if ( sort == Sort::serv && !valuation.contains( name ) && !state.contains( name ) )
            throw EvalError{ "focus '" + name + "' missing from state" };
        if ( sort != Sort::serv && !valuation.contains( name ) )
            throw EvalError{ "variable '" + name + "' has no value" };
    }
    return Evaluator{ f, state, cfg, valuation }.formula( f );
}

bool for_each_assignment( const std::set<std::string>& foci, const std::map<std::string, Sort>& vars,
                          const AlgebraConfig& cfg,
                          const std::function<bool( const ServiceFamily&, const Valuation& )>& fn )
{
    const ServiceAlgebra& alg = algebra_for( cfg.algebra );
    std::vector<std::pair<std::string, Sort>> ordinary;
    bool truncated = !foci.empty() && !alg.finite_carrier();
    for ( const auto& entry : vars )
    {
        if ( entry.second == Sort::serv )
            continue;
        ordinary.push_back( entry );
        truncated = truncated || entry.second == Sort::nat;
    }

    bool stop = false;
    for_each_state( foci, alg, cfg.bound, [ & ]( const ServiceFamily& state ) {
        Valuation current;
        for_each_valuation(
                ordinary.cbegin(), ordinary.cend(), cfg.bound, current,
                [ & ]( const Valuation& v ) { return fn( state, v ); }, stop );
        return !stop;
    } );
    return truncated;
}

std::string to_string( const EntailVerdict& v )
{
    switch ( v.kind )
    {
    case EntailVerdict::Kind::valid:
        return "valid";
    case EntailVerdict::Kind::bounded_valid:
        return "valid up to bound " + std::to_string( v.bound );
    case EntailVerdict::Kind::invalid:
    {
        std::string out = "invalid, counterexample " + to_string( v.witness_state.value_or( ServiceFamily{} ) );
        if ( !v.witness_valuation.empty() )
            out += " with " + to_string( v.witness_valuation );
        return out;
    }
    case EntailVerdict::Kind::unknown:
        return "unknown: " + v.reason;
    }
    return "?";
}

namespace {

EntailVerdict verdict_of( EntailVerdict::Kind kind, std::uint64_t bound = 0 )
{
    EntailVerdict v;
    v.kind = kind;
    v.bound = bound;
    return v;
}

} // namespace

EntailVerdict entails( const Formula& p, const Formula& q, const AlgebraConfig& cfg )
{
    if ( q->kind == FormulaKind::top || p->kind == FormulaKind::bottom || alpha_equal( p, q ) )
        return verdict_of( EntailVerdict::Kind::valid );

    // Sorts are inferred jointly so a name means the same thing on both sides.
    const std::map<std::string, Sort> vars = free_variables( formulas::conj( p, q ) );
    std::set<std::string> foci;
    for ( const auto& [ name, sort ] : vars )
        if ( sort == Sort::serv )
            foci.insert( name );

    EntailVerdict verdict;
    bool unknown = false;
    bool found = false;
    const bool truncated = for_each_assignment( foci, vars, cfg, [ & ]( const ServiceFamily& u, const Valuation& v ) {
        Truth lhs = Evaluator{ p, u, cfg, v }.formula( p );
        if ( lhs == Truth::false_ )
            return true;
        Truth rhs = Evaluator{ q, u, cfg, v }.formula( q );
        if ( rhs == Truth::true_ )
            return true;
        if ( lhs == Truth::true_ && rhs == Truth::false_ )
        {
            verdict.kind = EntailVerdict::Kind::invalid;
            verdict.witness_state = u;
            verdict.witness_valuation = v;
            found = true;
            return false;
        }
        if ( !unknown )
            verdict.reason = "quantifier bound too small to decide at " + to_string( u ) +
                             ( v.empty() ? std::string{} : " with " + to_string( v ) );
        unknown = true;
        return true;
    } );

    if ( found )
        return verdict;
    if ( unknown )
    {
        verdict.kind = EntailVerdict::Kind::unknown;
        return verdict;
    }
    if ( truncated )
        return verdict_of( EntailVerdict::Kind::bounded_valid, cfg.bound );
    return verdict_of( EntailVerdict::Kind::valid );
}

} // namespace pga
