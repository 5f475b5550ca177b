#include "pga/proof.hpp"

#include "pga/sequence.hpp"

#include <algorithm>

namespace pga {

namespace {

bool same_conclusion( const AssertedSeq& a, const AssertedSeq& b )
{
    return a.entry == b.entry && a.exit == b.exit && alpha_equal( a.pre, b.pre ) && alpha_equal( a.post, b.post ) &&
           same_modulo_association( a.seq, b.seq );
}

// The single instruction a term denotes, if it denotes exactly one.
std::optional<Instruction> single_instruction( const SequenceTerm& seq )
{
    CanonicalSequence canonical = normalize( seq );
    if ( canonical.finite() && canonical.prefix().size() == 1 )
        return canonical.prefix().front();
    return std::nullopt;
}

bool is_prefix( const FlatSequence& part, const FlatSequence& whole )
{
    return part.size() <= whole.size() && std::equal( part.begin(), part.end(), whole.begin() );
}

bool is_suffix( const FlatSequence& part, const FlatSequence& whole )
{
    return part.size() <= whole.size() && std::equal( part.rbegin(), part.rend(), whole.rbegin() );
}

class Checker
{
public:
    Checker( const AlgebraConfig& cfg, bool strict, CheckResult& result )
        : _cfg{ cfg }, _strict{ strict }, _result{ result }
    {
    }

    std::optional<AssertedSeq> check( const ProofNode& n )
    {
        _path.push_back( to_string( n.rule ) + ( n.line ? "@" + std::to_string( n.line ) : std::string{} ) );
        std::optional<AssertedSeq> out;
        try
        {
            out = dispatch( n );
        }
        catch ( const std::exception& e )
        {
            fail( e.what() );
        }
        _path.pop_back();
        return out;
    }

private:
    const AlgebraConfig& _cfg;
    bool _strict;
    CheckResult& _result;
    std::vector<std::string> _path;
    const std::vector<AssertedSeq>* _hyps = nullptr; // set inside repetition subproofs

    std::nullopt_t fail( const std::string& reason )
    {
        std::string path;
        for ( const auto& step : _path )
            path += ( path.empty() ? "" : " > " ) + step;
        _result.failures.push_back( { path, reason } );
        return std::nullopt;
    }

    // Premise conclusions; nullopt when any premise failed (already reported).
    std::optional<std::vector<AssertedSeq>> premises( const ProofNode& n, std::size_t expected )
    {
        if ( n.premises.size() != expected )
        {
            fail( "expected " + std::to_string( expected ) + " premise(s), got " +
                  std::to_string( n.premises.size() ) );
            return std::nullopt;
        }
        std::vector<AssertedSeq> out;
        bool ok = true;
        for ( const auto& p : n.premises )
        {
            std::optional<AssertedSeq> c = check( *p );
            if ( c )
                out.push_back( *c );
            else
                ok = false;
        }
        if ( !ok )
            return std::nullopt;
        return out;
    }

    // Compares the stated conclusion with the one the rule derives.
    std::optional<AssertedSeq> settle( const ProofNode& n, const AssertedSeq& derived )
    {
        if ( n.conclusion && !same_conclusion( *n.conclusion, derived ) )
            return fail( "stated conclusion " + to_string( *n.conclusion ) + " does not match derived " +
                         to_string( derived ) );
        return n.conclusion ? *n.conclusion : derived;
    }

    std::optional<AssertedSeq> stated( const ProofNode& n )
    {
        if ( !n.conclusion )
            return fail( "this rule needs an explicit conclusion (=> ...)" );
        return n.conclusion;
    }

    std::optional<AssertedSeq> dispatch( const ProofNode& n )
    {
        if ( is_axiom( n.rule ) )
            return axiom( n );
        switch ( n.rule )
        {
        case RuleId::hyp:
            return hypothesis( n );
        case RuleId::r1:
            return concatenation( n );
        case RuleId::r2:
            return exit_through_prefix( n );
        case RuleId::r3:
            return stop_in_prefix( n );
        case RuleId::r4:
            return enter_suffix( n );
        case RuleId::r5:
            return repetition( n );
        case RuleId::r6:
            return alternatives( n );
        case RuleId::r7:
            return invariance( n );
        case RuleId::r8:
            return elimination( n );
        case RuleId::r9:
            return substitution( n );
        case RuleId::r10:
            return consequence( n );
        case RuleId::rep_intro:
            return repetition_intro( n );
        default:
            return fail( "unknown rule" );
        }
    }

    std::optional<AssertedSeq> axiom( const ProofNode& n )
    {
        const AssertedSeq& c = *n.conclusion;
        if ( !n.premises.empty() )
            return fail( "axioms take no premises" );
        if ( c.entry != 1 )
            return fail( "axiom instances have entry 1" );
        std::optional<Instruction> instr = single_instruction( c.seq );
        if ( !instr )
            return fail( "axiom instances concern a single instruction" );

        auto want_kind = [ & ]( InstrKind kind, const char* what ) {
            if ( instr->kind != kind )
                throw std::invalid_argument{ std::string{ "instruction must be " } + what };
        };
        auto want_exit = [ & ]( std::uint64_t e ) {
            if ( c.exit != e )
                throw std::invalid_argument{ "exit must be " + std::to_string( e ) };
        };
        auto reply_is = [ & ]( Reply r ) {
            return formulas::eq( terms::reply_of( instr->method, terms::var( instr->focus ) ), terms::reply( r ) );
        };
        auto want_pre = [ & ]( const Formula& expected ) {
            if ( !alpha_equal( c.pre, expected ) )
                throw std::invalid_argument{ "precondition must be " + to_string( expected ) };
        };
        auto after_step = [ & ] { return substitute_derive( c.post, instr->focus, instr->method ); };
        auto want_false_post = [ & ] {
            if ( c.post->kind != FormulaKind::bottom )
                throw std::invalid_argument{ "postcondition must be false" };
        };

        switch ( n.rule )
        {
        case RuleId::a1:
            want_kind( InstrKind::basic, "a basic instruction" );
            want_exit( 1 );
            want_pre( formulas::conj( formulas::neg( reply_is( Reply::d ) ), after_step() ) );
            break;
        case RuleId::a2:
            want_kind( InstrKind::basic, "a basic instruction" );
            want_exit( 0 );
            want_pre( reply_is( Reply::d ) );
            want_false_post();
            break;
        case RuleId::a3:
        case RuleId::a4:
            want_kind( InstrKind::pos_test, "a positive test" );
            want_exit( n.rule == RuleId::a3 ? 1 : 2 );
            want_pre( formulas::conj( reply_is( n.rule == RuleId::a3 ? Reply::t : Reply::f ), after_step() ) );
            break;
        case RuleId::a5:
            want_kind( InstrKind::pos_test, "a positive test" );
            want_exit( 0 );
            want_pre( reply_is( Reply::d ) );
            want_false_post();
            break;
        case RuleId::a6:
        case RuleId::a7:
            want_kind( InstrKind::neg_test, "a negative test" );
            want_exit( n.rule == RuleId::a6 ? 2 : 1 );
            want_pre( formulas::conj( reply_is( n.rule == RuleId::a6 ? Reply::t : Reply::f ), after_step() ) );
            break;
        case RuleId::a8:
            want_kind( InstrKind::neg_test, "a negative test" );
            want_exit( 0 );
            want_pre( reply_is( Reply::d ) );
            want_false_post();
            break;
        case RuleId::a9:
            want_kind( InstrKind::jump, "a jump" );
            if ( instr->offset == 0 )
                return fail( "jump offset must be positive" );
            want_exit( instr->offset );
            want_pre( c.post );
            break;
        case RuleId::a10:
            want_kind( InstrKind::jump, "a jump" );
            if ( instr->offset != 0 )
                return fail( "instruction must be #0" );
            want_exit( 0 );
            want_pre( formulas::top() );
            want_false_post();
            break;
        case RuleId::a11:
            want_kind( InstrKind::halt, "!" );
            want_exit( 0 );
            want_pre( c.post );
            break;
        default:
            return fail( "not an axiom" );
        }
        // Both sides must be well sorted, with the focus used as a service.
        free_variables( formulas::conj( c.pre, c.post ) );
        return c;
    }

    std::optional<AssertedSeq> hypothesis( const ProofNode& n )
    {
        if ( !_hyps )
            return fail( "hypotheses may only be used inside a repetition subproof" );
        if ( n.hyp_index < 1 || n.hyp_index > _hyps->size() )
            return fail( "hypothesis index " + std::to_string( n.hyp_index ) + " out of range" );
        return settle( n, ( *_hyps )[ n.hyp_index - 1 ] );
    }

    std::optional<AssertedSeq> concatenation( const ProofNode& n )
    {
        auto ps = premises( n, 2 );
        if ( !ps )
            return std::nullopt;
        const AssertedSeq& first = ( *ps )[ 0 ];
        const AssertedSeq& second = ( *ps )[ 1 ];
        if ( first.exit == 0 )
            return fail( "first premise must exit with a positive offset" );
        if ( first.exit != second.entry )
            return fail( "first premise exits at " + std::to_string( first.exit ) + " but second enters at " +
                         std::to_string( second.entry ) );
        if ( !alpha_equal( first.post, second.pre ) )
            return fail( "intermediate assertions differ: " + to_string( first.post ) + " vs " +
                         to_string( second.pre ) );
        return settle( n, AssertedSeq{ first.entry, first.pre, SequenceTerm::concat( first.seq, second.seq ),
                                       second.exit, second.post } );
    }

    // Splits the conclusion's sequence around the premise's, which must be
    // its first (`prefix`) or last part; returns the remaining part.
    std::optional<SequenceTerm> remainder( const AssertedSeq& premise, const AssertedSeq& conclusion, bool prefix )
    {
        FlatSequence whole = flatten( conclusion.seq );
        FlatSequence part = flatten( premise.seq );
        if ( part.size() >= whole.size() ||
             !( prefix ? is_prefix( part, whole ) : is_suffix( part, whole ) ) )
        {
            fail( std::string{ "premise sequence is not a proper " } + ( prefix ? "prefix" : "suffix" ) +
                  " of the conclusion's" );
            return std::nullopt;
        }
        FlatSequence rest = prefix ? FlatSequence( whole.begin() + static_cast<std::ptrdiff_t>( part.size() ), whole.end() )
                                   : FlatSequence( whole.begin(), whole.end() - static_cast<std::ptrdiff_t>( part.size() ) );
        return unflatten( rest );
    }

    std::optional<AssertedSeq> exit_through_prefix( const ProofNode& n )
    {
        auto ps = premises( n, 1 );
        auto c = stated( n );
        if ( !ps || !c )
            return std::nullopt;
        const AssertedSeq& p = ( *ps )[ 0 ];
        auto rest = remainder( p, *c, true );
        if ( !rest )
            return std::nullopt;
        SeqLength skipped = length_of( *rest );
        if ( !skipped )
            return fail( "the skipped part has infinite length" );
        if ( c->exit == 0 )
            return fail( "conclusion exit must be positive" );
        if ( p.exit != c->exit + *skipped )
            return fail( "premise exit must be " + std::to_string( c->exit + *skipped ) );
        if ( p.entry != c->entry || !alpha_equal( p.pre, c->pre ) || !alpha_equal( p.post, c->post ) )
            return fail( "entry and assertions must carry over unchanged" );
        return c;
    }

    std::optional<AssertedSeq> stop_in_prefix( const ProofNode& n )
    {
        auto ps = premises( n, 1 );
        auto c = stated( n );
        if ( !ps || !c )
            return std::nullopt;
        const AssertedSeq& p = ( *ps )[ 0 ];
        if ( p.exit != 0 || c->exit != 0 )
            return fail( "premise and conclusion must have exit 0" );
        if ( !remainder( p, *c, true ) )
            return std::nullopt;
        if ( p.entry != c->entry || !alpha_equal( p.pre, c->pre ) || !alpha_equal( p.post, c->post ) )
            return fail( "entry and assertions must carry over unchanged" );
        return c;
    }

    std::optional<AssertedSeq> enter_suffix( const ProofNode& n )
    {
        auto ps = premises( n, 1 );
        auto c = stated( n );
        if ( !ps || !c )
            return std::nullopt;
        const AssertedSeq& p = ( *ps )[ 0 ];
        auto front = remainder( p, *c, false );
        if ( !front )
            return std::nullopt;
        SeqLength skipped = length_of( *front );
        if ( !skipped )
            return fail( "the skipped part has infinite length" );
        if ( c->entry != p.entry + *skipped )
            return fail( "conclusion entry must be " + std::to_string( p.entry + *skipped ) );
        if ( p.exit != c->exit || !alpha_equal( p.pre, c->pre ) || !alpha_equal( p.post, c->post ) )
            return fail( "exit and assertions must carry over unchanged" );
        return c;
    }

    std::optional<AssertedSeq> repetition( const ProofNode& n )
    {
        if ( _hyps )
            return fail( "repetition rule used inside a repetition subproof" );
        if ( n.hyps.empty() )
            return fail( "repetition needs at least one hypothesis" );
        if ( n.k < 1 || n.k > n.hyps.size() )
            return fail( "k must lie in 1.." + std::to_string( n.hyps.size() ) );
        if ( n.subproofs.size() != n.hyps.size() )
            return fail( "one subproof per hypothesis required" );

        const SequenceTerm& repeated = n.hyps.front().seq;
        FlatSequence rep_flat = flatten( repeated );
        if ( rep_flat.size() != 1 || !rep_flat.front().is_repeat )
            return fail( "hypotheses must be about a repetition S^w" );
        for ( const AssertedSeq& h : n.hyps )
        {
            if ( h.exit != 0 )
                return fail( "hypotheses must have exit 0" );
            if ( flatten( h.seq ) != rep_flat )
                return fail( "all hypotheses must concern the same repetition" );
        }
        // S ; S^w, written out.
        FlatSequence unrolled = rep_flat.front().body;
        unrolled.push_back( rep_flat.front() );

        bool ok = true;
        _hyps = &n.hyps;
        for ( std::size_t i = 0; i < n.subproofs.size(); ++i )
        {
            _path.push_back( "subproof " + std::to_string( i + 1 ) );
            std::optional<AssertedSeq> got = check( *n.subproofs[ i ] );
            if ( got )
            {
                const AssertedSeq& h = n.hyps[ i ];
                if ( got->entry != h.entry || got->exit != 0 || !alpha_equal( got->pre, h.pre ) ||
                     !alpha_equal( got->post, h.post ) || flatten( got->seq ) != unrolled )
                {
                    fail( "subproof must conclude " +
                          to_string( AssertedSeq{ h.entry, h.pre, unflatten( unrolled ), 0, h.post } ) );
                    ok = false;
                }
            }
            else
                ok = false;
            _path.pop_back();
        }
        _hyps = nullptr;
        if ( !ok )
            return std::nullopt;
        return settle( n, n.hyps[ n.k - 1 ] );
    }

    std::optional<AssertedSeq> alternatives( const ProofNode& n )
    {
        auto ps = premises( n, 2 );
        if ( !ps )
            return std::nullopt;
        const AssertedSeq& a = ( *ps )[ 0 ];
        const AssertedSeq& b = ( *ps )[ 1 ];
        if ( a.entry != b.entry || a.exit != b.exit || !same_modulo_association( a.seq, b.seq ) ||
             !alpha_equal( a.post, b.post ) )
            return fail( "premises must agree on everything but the precondition" );
        return settle( n, AssertedSeq{ a.entry, formulas::disj( a.pre, b.pre ), a.seq, a.exit, a.post } );
    }

    std::optional<AssertedSeq> invariance( const ProofNode& n )
    {
        auto ps = premises( n, 1 );
        auto c = stated( n );
        if ( !ps || !c )
            return std::nullopt;
        const AssertedSeq& p = ( *ps )[ 0 ];
        if ( c->pre->kind != FormulaKind::conj || c->post->kind != FormulaKind::conj )
            return fail( "conclusion must have the form {b | P /\\ R} S {e | Q /\\ R}" );
        const Formula& invariant = c->pre->sub[ 1 ];
        if ( !alpha_equal( c->post->sub[ 1 ], invariant ) )
            return fail( "the added conjunct must be the same on both sides" );
        if ( !same_conclusion( p, AssertedSeq{ c->entry, c->pre->sub[ 0 ], c->seq, c->exit, c->post->sub[ 0 ] } ) )
            return fail( "premise does not match the conclusion without the invariant" );
        std::set<std::string> shared;
        std::set<std::string> seq_foci = foci_of( c->seq );
        for ( const std::string& f : free_foci( invariant ) )
            if ( seq_foci.contains( f ) )
                shared.insert( f );
        if ( !shared.empty() )
            return fail( "invariant mentions focus '" + *shared.begin() + "' used by the sequence" );
        return c;
    }

    std::optional<AssertedSeq> elimination( const ProofNode& n )
    {
        auto ps = premises( n, 1 );
        auto c = stated( n );
        if ( !ps || !c )
            return std::nullopt;
        const AssertedSeq& p = ( *ps )[ 0 ];
        if ( c->pre->kind != FormulaKind::exists )
            return fail( "conclusion precondition must be existentially quantified" );
        const std::string& x = c->pre->var;
        if ( !same_conclusion( p, AssertedSeq{ c->entry, c->pre->sub[ 0 ], c->seq, c->exit, c->post } ) )
            return fail( "premise does not match the conclusion without the quantifier" );
        if ( foci_of( c->seq ).contains( x ) )
            return fail( "'" + x + "' is a focus of the sequence" );
        if ( free_names( c->post ).contains( x ) )
            return fail( "'" + x + "' occurs free in the postcondition" );
        // The bound variable must have the sort the premise gives it.
        std::map<std::string, Sort> sorts = free_variables( p.pre );
        if ( auto it = sorts.find( x ); it != sorts.end() && it->second != c->pre->sort )
            return fail( "'" + x + "' has sort " + to_string( it->second ) + " in the premise" );
        return c;
    }

    std::optional<AssertedSeq> substitution( const ProofNode& n )
    {
        auto ps = premises( n, 1 );
        if ( !ps )
            return std::nullopt;
        const AssertedSeq& p = ( *ps )[ 0 ];
        if ( n.rename_from.empty() || n.rename_to.empty() )
            return fail( "substitution needs [y/x]" );
        std::set<std::string> seq_foci = foci_of( p.seq );
        for ( const std::string* v : { &n.rename_from, &n.rename_to } )
            if ( seq_foci.contains( *v ) )
                return fail( "'" + *v + "' is a focus of the sequence" );
        AssertedSeq derived{ p.entry, rename( p.pre, n.rename_from, n.rename_to ), p.seq, p.exit,
                             rename( p.post, n.rename_from, n.rename_to ) };
        free_variables( formulas::conj( derived.pre, derived.post ) );
        return settle( n, derived );
    }

    bool discharge( const Formula& lhs, const Formula& rhs )
    {
        EntailVerdict v = entails( lhs, rhs, _cfg );
        const std::string text = to_string( formulas::impl( lhs, rhs ) );
        switch ( v.kind )
        {
        case EntailVerdict::Kind::valid:
            return true;
        case EntailVerdict::Kind::bounded_valid:
            if ( _strict )
            {
                fail( "entailment " + text + " only checked up to bound " + std::to_string( v.bound ) +
                      " (strict mode)" );
                return false;
            }
            _result.assumptions.push_back( text + " (checked up to B=" + std::to_string( v.bound ) + ")" );
            return true;
        case EntailVerdict::Kind::invalid:
        case EntailVerdict::Kind::unknown:
            fail( "entailment " + text + " is " + to_string( v ) );
            return false;
        }
        return false;
    }

    std::optional<AssertedSeq> consequence( const ProofNode& n )
    {
        auto ps = premises( n, 1 );
        if ( !ps )
            return std::nullopt;
        const AssertedSeq& p = ( *ps )[ 0 ];
        if ( !n.conclusion && !( n.strengthen && n.weaken ) )
            return fail( "consequence needs a conclusion or both obligations" );

        Formula pre = n.conclusion ? n.conclusion->pre : n.strengthen->first;
        Formula post = n.conclusion ? n.conclusion->post : n.weaken->second;
        if ( n.strengthen &&
             !( alpha_equal( n.strengthen->first, pre ) && alpha_equal( n.strengthen->second, p.pre ) ) )
            return fail( "first obligation must be " + to_string( formulas::impl( pre, p.pre ) ) );
        if ( n.weaken && !( alpha_equal( n.weaken->first, p.post ) && alpha_equal( n.weaken->second, post ) ) )
            return fail( "second obligation must be " + to_string( formulas::impl( p.post, post ) ) );

        AssertedSeq derived{ p.entry, pre, p.seq, p.exit, post };
        auto c = settle( n, derived );
        if ( !c )
            return std::nullopt;
        bool ok = discharge( pre, p.pre );
        ok = discharge( p.post, post ) && ok;
        if ( !ok )
            return std::nullopt;
        return c;
    }

    std::optional<AssertedSeq> repetition_intro( const ProofNode& n )
    {
        if ( _hyps )
            return fail( "repetition introduction used inside a repetition subproof" );
        auto ps = premises( n, 1 );
        if ( !ps )
            return std::nullopt;
        const AssertedSeq& p = ( *ps )[ 0 ];
        if ( p.exit != 0 )
            return fail( "premise must have exit 0" );
        return settle( n, AssertedSeq{ p.entry, p.pre, SequenceTerm::repeat( p.seq ), 0, p.post } );
    }
};

} // namespace

CheckResult check_proof( const ProofNode& root, const AlgebraConfig& cfg, bool strict )
{
    cfg.validate();
    CheckResult result;
    Checker checker{ cfg, strict, result };
    result.conclusion = checker.check( root );
    result.accepted = result.conclusion.has_value() && result.failures.empty();
    if ( !result.accepted )
        result.conclusion.reset();
    return result;
}

} // namespace pga
