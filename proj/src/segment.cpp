#include "pga/segment.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace pga {

Outcome Outcome::halted( ServiceFamily state )
{
    return { Kind::halted, 0, std::move( state ) };
}

Outcome Outcome::exited( std::uint64_t offset, ServiceFamily state )
{
    return { Kind::exited, offset, std::move( state ) };
}

Outcome Outcome::inactive()
{
    return { Kind::inactive, 0, {} };
}

Outcome Outcome::budget_exhausted()
{
    return { Kind::budget_exhausted, 0, {} };
}

std::string to_string( const Outcome& o )
{
    switch ( o.kind )
    {
    case Outcome::Kind::halted:
        return "halted " + to_string( o.state );
    case Outcome::Kind::exited:
        return "exited " + std::to_string( o.offset ) + " " + to_string( o.state );
    case Outcome::Kind::inactive:
        return "inactive";
    case Outcome::Kind::budget_exhausted:
        return "budget exhausted";
    }
    return "?";
}

Outcome run_segment( const CanonicalSequence& seq, std::uint64_t entry, const ServiceFamily& state,
                     std::uint64_t bound )
{
    const SeqLength len = seq.length();
    if ( entry < 1 || ( len && entry > *len ) )
        throw std::out_of_range{ "entry beyond segment" };

    ServiceFamily u = state;
    std::uint64_t pos = entry;

    // Only infinite segments can run forever. Positions there are kept
    // within the first pass over the period; every endless run wraps around
    // infinitely often, so remembering the state at each wrap is enough to
    // detect a cycle.
    const std::uint64_t wrap_limit = seq.positions();
    const std::uint64_t period = seq.period().size();
    std::set<std::pair<std::uint64_t, ServiceFamily>> seen;
    std::uint64_t largest = 0;
    for ( const auto& entry_state : state )
        if ( entry_state.second.kind == Service::Kind::counter )
            largest = std::max( largest, entry_state.second.content );
    const std::uint64_t budget = bound * seq.positions() * ( largest + 1 );
    std::uint64_t steps = 0;

    while ( true )
    {
        if ( len && pos > *len )
            return Outcome::exited( pos - *len, std::move( u ) );

        if ( !len )
        {
            if ( pos > wrap_limit )
            {
                pos -= ( pos - wrap_limit - 1 ) / period * period + period;
                if ( !seen.emplace( pos, u ).second )
                    return Outcome::inactive();
            }
            if ( ++steps > budget )
                return Outcome::budget_exhausted();
        }

        const Instruction& instr = seq.at( pos );
        switch ( instr.kind )
        {
        case InstrKind::halt:
            return Outcome::halted( std::move( u ) );
        case InstrKind::jump:
            if ( instr.offset == 0 )
                return Outcome::inactive();
            pos += instr.offset;
            continue;
        default:
            break;
        }

        auto it = u.find( instr.focus );
        if ( it == u.end() )
            return Outcome::inactive();
        StepResult step = svc_step( it->second, instr.method );
        if ( step.reply == Reply::d )
            return Outcome::inactive();
        it->second = step.next;
        bool skip = ( instr.kind == InstrKind::pos_test && step.reply == Reply::f ) ||
                    ( instr.kind == InstrKind::neg_test && step.reply == Reply::t );
        pos += skip ? 2 : 1;
    }
}

Outcome run_segment( const SequenceTerm& seq, std::uint64_t entry, const ServiceFamily& state, std::uint64_t bound )
{
    return run_segment( normalize( seq ), entry, state, bound );
}

std::string to_string( const Verdict& v )
{
    switch ( v.kind )
    {
    case Verdict::Kind::holds:
        return v.bounded ? "HOLDS (bounded, B=" + std::to_string( v.bound ) + ")" : "HOLDS";
    case Verdict::Kind::fails:
    {
        std::string out = "FAILS: " + v.reason;
        if ( v.witness_state )
            out += "; state " + to_string( *v.witness_state );
        if ( !v.witness_valuation.empty() )
            out += " with " + to_string( v.witness_valuation );
        if ( v.witness_outcome )
            out += "; outcome " + to_string( *v.witness_outcome );
        return out;
    }
    case Verdict::Kind::unknown:
        return "UNKNOWN: " + v.reason;
    }
    return "?";
}

namespace {

struct Scope
{
    std::set<std::string> foci;
    std::map<std::string, Sort> vars;
};

Scope scope_of( const Formula& pre, const SequenceTerm& seq, const Formula& post )
{
    Scope scope;
    scope.vars = free_variables( formulas::conj( pre, post ) );
    for ( const auto& [ name, sort ] : scope.vars )
        if ( sort == Sort::serv )
            scope.foci.insert( name );
    for ( const std::string& focus : foci_of( seq ) )
    {
        auto it = scope.vars.find( focus );
        if ( it != scope.vars.end() && it->second != Sort::serv )
            throw SortError{ "'" + focus + "' is a focus of the sequence but has sort " + to_string( it->second ) +
                             " in the assertions" };
        scope.foci.insert( focus );
    }
    return scope;
}

bool outcome_matches( const Outcome& o, std::uint64_t exit )
{
    return exit == 0 ? o.kind == Outcome::Kind::halted
                     : o.kind == Outcome::Kind::exited && o.offset == exit;
}

std::string expected_text( std::uint64_t exit )
{
    return exit == 0 ? "halting inside the segment" : "exit " + std::to_string( exit );
}

} // namespace

Verdict holds( const AssertedSeq& phi, const AlgebraConfig& cfg )
{
    cfg.validate();
    Verdict verdict;
    const CanonicalSequence seq = normalize( phi.seq );
    const SeqLength len = seq.length();
    if ( len && phi.entry > *len )
    {
        verdict.kind = Verdict::Kind::fails;
        verdict.reason = "entry " + std::to_string( phi.entry ) + " lies beyond the segment of length " +
                         std::to_string( *len );
        return verdict;
    }

    const Scope scope = scope_of( phi.pre, phi.seq, phi.post );
    bool failed = false;
    std::string unknown;

    auto record_failure = [ & ]( const ServiceFamily& u, const Valuation& v, const Outcome& o, std::string why ) {
        verdict.kind = Verdict::Kind::fails;
        verdict.witness_state = u;
        verdict.witness_valuation = v;
        verdict.witness_outcome = o;
        verdict.reason = std::move( why );
        failed = true;
    };

    const bool truncated =
            for_each_assignment( scope.foci, scope.vars, cfg, [ & ]( const ServiceFamily& u, const Valuation& v ) {
                Truth pre = eval_formula( phi.pre, u, cfg, v );
                if ( pre == Truth::false_ )
                    return true;
                Outcome o = run_segment( seq, phi.entry, u, cfg.bound );
                if ( o.kind == Outcome::Kind::inactive )
                    return true;
                if ( o.kind == Outcome::Kind::budget_exhausted )
                {
                    if ( unknown.empty() )
                        unknown = "step budget exhausted from " + to_string( u );
                    return true;
                }
                if ( !outcome_matches( o, phi.exit ) )
                {
                    if ( pre == Truth::true_ )
                    {
                        record_failure( u, v, o, "expected " + expected_text( phi.exit ) );
                        return false;
                    }
                    if ( unknown.empty() )
                        unknown = "precondition undecided at " + to_string( u );
                    return true;
                }
                Truth post = eval_formula( phi.post, o.state, cfg, v );
                if ( post == Truth::true_ )
                    return true;
                if ( pre == Truth::true_ && post == Truth::false_ )
                {
                    record_failure( u, v, o, "postcondition false after " + expected_text( phi.exit ) );
                    return false;
                }
                if ( unknown.empty() )
                    unknown = "quantifier bound too small to decide at " + to_string( u );
                return true;
            } );

    if ( failed )
        return verdict;
    if ( !unknown.empty() )
    {
        verdict.kind = Verdict::Kind::unknown;
        verdict.reason = unknown;
        return verdict;
    }
    verdict.kind = Verdict::Kind::holds;
    verdict.bounded = truncated;
    verdict.bound = truncated ? cfg.bound : 0;
    return verdict;
}

Formula describe_state( const ServiceFamily& state )
{
    Formula out;
    for ( const auto& [ focus, service ] : state )
    {
        Term value;
        switch ( service.kind )
        {
        case Service::Kind::empty:
            value = terms::empty();
            break;
        case Service::Kind::counter:
            value = terms::nnc( terms::numeral( service.content ) );
            break;
        case Service::Kind::boolreg:
            value = terms::reg( terms::boolean( service.content != 0 ) );
            break;
        }
        Formula atom = formulas::eq( terms::var( focus ), value );
        out = out ? formulas::conj( out, atom ) : atom;
    }
    return out ? out : formulas::top();
}

PostImage strongest_post( const Formula& pre, const SequenceTerm& seq, std::uint64_t entry, std::uint64_t exit,
                          const AlgebraConfig& cfg )
{
    Verdict existence = holds( AssertedSeq{ entry, pre, seq, exit, formulas::top() }, cfg );
    if ( existence.kind == Verdict::Kind::fails )
        throw std::domain_error{ "no post-condition exists for this e: " + to_string( existence ) };
    if ( existence.kind == Verdict::Kind::unknown )
        throw std::domain_error{ "cannot establish that a post-condition exists: " + existence.reason };

    const CanonicalSequence canonical = normalize( seq );
    const Scope scope = scope_of( pre, seq, formulas::top() );
    std::set<ServiceFamily> image;
    PostImage out;
    out.bounded = for_each_assignment( scope.foci, scope.vars, cfg, [ & ]( const ServiceFamily& u, const Valuation& v ) {
        if ( eval_formula( pre, u, cfg, v ) != Truth::true_ )
            return true;
        Outcome o = run_segment( canonical, entry, u, cfg.bound );
        if ( outcome_matches( o, exit ) )
            image.insert( std::move( o.state ) );
        return true;
    } );

    out.states.assign( image.begin(), image.end() );
    for ( const ServiceFamily& state : out.states )
    {
        Formula f = describe_state( state );
        out.formula = out.formula ? formulas::disj( out.formula, f ) : f;
    }
    if ( !out.formula )
        out.formula = formulas::bottom();
    return out;
}

} // namespace pga
