#include "oracle.hpp"

#include <numeric>
#include <set>

namespace pga::testing {

namespace {

struct Shape
{
    std::uint64_t prefix = 0;
    std::uint64_t period = 0; // 0 for finite terms
};

Shape shape_of( const SequenceTerm& t )
{
    switch ( t.kind() )
    {
    case SequenceTerm::Kind::instr:
        return { 1, 0 };
    case SequenceTerm::Kind::concat:
    {
        Shape a = shape_of( t.left() );
        if ( a.period )
            return a;
        Shape b = shape_of( t.right() );
        return { a.prefix + b.prefix, b.period };
    }
    case SequenceTerm::Kind::power:
    {
        if ( t.exponent() == 0 )
            return { 1, 0 };
        Shape a = shape_of( t.left() );
        if ( a.period )
            return a;
        return { a.prefix * t.exponent(), 0 };
    }
    case SequenceTerm::Kind::repeat:
    {
        Shape a = shape_of( t.left() );
        if ( a.period )
            return a;
        return { 0, a.prefix };
    }
    }
    return {};
}

std::size_t pick( Rng& rng, std::size_t n )
{
    return std::uniform_int_distribution<std::size_t>{ 0, n - 1 }( rng );
}

bool chance( Rng& rng, double p )
{
    return std::bernoulli_distribution{ p }( rng );
}

} // namespace

SeqLength structural_length( const SequenceTerm& t )
{
    Shape s = shape_of( t );
    if ( s.period )
        return std::nullopt;
    return s.prefix;
}

std::optional<Instruction> structural_at( const SequenceTerm& t, std::uint64_t pos )
{
    switch ( t.kind() )
    {
    case SequenceTerm::Kind::instr:
        if ( pos == 1 )
            return t.instruction();
        return std::nullopt;
    case SequenceTerm::Kind::concat:
    {
        SeqLength left = structural_length( t.left() );
        if ( !left || pos <= *left )
            return structural_at( t.left(), pos );
        return structural_at( t.right(), pos - *left );
    }
    case SequenceTerm::Kind::power:
    {
        if ( t.exponent() == 0 )
            return pos == 1 ? std::optional{ Instruction::jump( 0 ) } : std::nullopt;
        SeqLength body = structural_length( t.left() );
        if ( !body )
            return structural_at( t.left(), pos );
        if ( pos > *body * t.exponent() )
            return std::nullopt;
        return structural_at( t.left(), ( pos - 1 ) % *body + 1 );
    }
    case SequenceTerm::Kind::repeat:
    {
        SeqLength body = structural_length( t.left() );
        if ( !body )
            return structural_at( t.left(), pos );
        return structural_at( t.left(), ( pos - 1 ) % *body + 1 );
    }
    }
    return std::nullopt;
}

bool structural_equal( const SequenceTerm& a, const SequenceTerm& b )
{
    Shape sa = shape_of( a );
    Shape sb = shape_of( b );
    if ( ( sa.period == 0 ) != ( sb.period == 0 ) )
        return false;
    if ( sa.period == 0 && sa.prefix != sb.prefix )
        return false;
    std::uint64_t n = sa.period == 0
                              ? sa.prefix
                              : sa.prefix + sb.prefix + 2 * std::lcm( sa.period, sb.period );
    for ( std::uint64_t i = 1; i <= n; ++i )
        if ( structural_at( a, i ) != structural_at( b, i ) )
            return false;
    return true;
}

Instruction random_instruction( Rng& rng, std::uint64_t max_jump )
{
    static const char* const foci[] = { "a", "b" };
    static const char* const methods[] = { "m", "n" };
    std::string f = foci[ pick( rng, 2 ) ];
    std::string m = methods[ pick( rng, 2 ) ];
    switch ( pick( rng, 5 ) )
    {
    case 0:
        return Instruction::basic( f, m );
    case 1:
        return Instruction::pos_test( f, m );
    case 2:
        return Instruction::neg_test( f, m );
    case 3:
        return Instruction::jump( pick( rng, max_jump + 1 ) );
    default:
        return Instruction::halt();
    }
}

SequenceTerm random_term( Rng& rng, int depth )
{
    if ( depth <= 0 )
        return SequenceTerm::instr( random_instruction( rng ) );
    switch ( pick( rng, 10 ) )
    {
    case 0:
    case 1:
    case 2:
        return SequenceTerm::instr( random_instruction( rng ) );
    case 3:
    case 4:
    case 5:
    case 6:
        return SequenceTerm::concat( random_term( rng, depth - 1 ), random_term( rng, depth - 1 ) );
    case 7:
        return SequenceTerm::power( random_term( rng, depth - 1 ), pick( rng, 4 ) );
    default:
        return SequenceTerm::repeat( random_term( rng, depth - 1 ) );
    }
}

namespace {

std::optional<SequenceTerm> rewrite_here( Rng& rng, const SequenceTerm& t )
{
    using K = SequenceTerm::Kind;
    std::vector<SequenceTerm> options;
    if ( t.kind() == K::concat && t.left().kind() == K::concat )
        options.push_back( SequenceTerm::concat( t.left().left(), SequenceTerm::concat( t.left().right(), t.right() ) ) );
    if ( t.kind() == K::concat && t.right().kind() == K::concat )
        options.push_back( SequenceTerm::concat( SequenceTerm::concat( t.left(), t.right().left() ), t.right().right() ) );
    if ( t.kind() == K::repeat )
    {
        const SequenceTerm& body = t.left();
        options.push_back( SequenceTerm::repeat( SequenceTerm::power( body, 1 + pick( rng, 3 ) ) ) );
        options.push_back( SequenceTerm::concat( t, random_term( rng, 1 ) ) );
        options.push_back( SequenceTerm::concat( body, t ) );
        if ( body.kind() == K::power && body.exponent() > 0 )
            options.push_back( SequenceTerm::repeat( body.left() ) );
        if ( body.kind() == K::concat )
            options.push_back( SequenceTerm::concat(
                    body.left(), SequenceTerm::repeat( SequenceTerm::concat( body.right(), body.left() ) ) ) );
    }
    if ( t.kind() == K::concat && t.left().kind() == K::repeat )
        options.push_back( t.left() );
    if ( t.kind() == K::concat && t.right().kind() == K::repeat && t.right().left().kind() == K::concat &&
         t.right().left().right() == t.left() )
        options.push_back( SequenceTerm::repeat( SequenceTerm::concat( t.left(), t.right().left().left() ) ) );
    if ( t.kind() == K::power && t.exponent() == 1 )
        options.push_back( t.left() );
    if ( t.kind() == K::power && t.exponent() >= 2 )
        options.push_back( SequenceTerm::concat( t.left(), SequenceTerm::power( t.left(), t.exponent() - 1 ) ) );
    if ( t.kind() == K::power && t.exponent() == 0 )
        options.push_back( SequenceTerm::instr( Instruction::jump( 0 ) ) );
    options.push_back( SequenceTerm::power( t, 1 ) );
    return options[ pick( rng, options.size() ) ];
}

} // namespace

SequenceTerm random_rewrite( Rng& rng, const SequenceTerm& t )
{
    using K = SequenceTerm::Kind;
    if ( t.kind() != K::instr && chance( rng, 0.5 ) )
    {
        switch ( t.kind() )
        {
        case K::concat:
            if ( chance( rng, 0.5 ) )
                return SequenceTerm::concat( random_rewrite( rng, t.left() ), t.right() );
            return SequenceTerm::concat( t.left(), random_rewrite( rng, t.right() ) );
        case K::power:
            return SequenceTerm::power( random_rewrite( rng, t.left() ), t.exponent() );
        case K::repeat:
            return SequenceTerm::repeat( random_rewrite( rng, t.left() ) );
        default:
            break;
        }
    }
    return *rewrite_here( rng, t );
}

SequenceTerm random_register_segment( Rng& rng, int max_len, bool allow_repeat )
{
    auto instr = [ & ] {
        switch ( pick( rng, 9 ) )
        {
        case 0:
            return Instruction::basic( "r", "get" );
        case 1:
            return Instruction::pos_test( "r", "get" );
        case 2:
            return Instruction::neg_test( "r", "get" );
        case 3:
            return Instruction::basic( "r", "set:t" );
        case 4:
            return Instruction::basic( "r", "set:f" );
        case 5:
            return Instruction::pos_test( "r", "set:f" );
        case 6:
        case 7:
            return Instruction::jump( pick( rng, 4 ) );
        default:
            return Instruction::halt();
        }
    };
    std::size_t len = 1 + pick( rng, static_cast<std::size_t>( max_len ) );
    std::vector<SequenceTerm> parts;
    for ( std::size_t i = 0; i < len; ++i )
        parts.push_back( SequenceTerm::instr( instr() ) );
    SequenceTerm seq = concat_all( parts );
    if ( allow_repeat && chance( rng, 0.3 ) )
        seq = SequenceTerm::repeat( seq );
    return seq;
}

Formula random_register_formula( Rng& rng, int depth, bool with_variable )
{
    using namespace terms;
    using namespace formulas;
    auto reg_focus = [ & ] { return var( chance( rng, 0.75 ) ? "r" : "q" ); };
    if ( depth <= 0 || chance( rng, 0.3 ) )
    {
        switch ( pick( rng, with_variable ? 9 : 7 ) )
        {
        case 0:
            return eq( reg_focus(), reg( boolean( true ) ) );
        case 1:
            return eq( reg_focus(), reg( boolean( false ) ) );
        case 2:
            return eq( reg_focus(), empty() );
        case 3:
            return eq( reply_of( "get", reg_focus() ), reply( chance( rng, 0.5 ) ? Reply::t : Reply::f ) );
        case 4:
            return eq( derive( "set:f", var( "r" ) ), reg( boolean( false ) ) );
        case 5:
            return chance( rng, 0.5 ) ? top() : bottom();
        case 6:
            return exists( "y", Sort::boolean, eq( var( "r" ), reg( var( "y" ) ) ) );
        case 7:
            return eq( var( "r" ), reg( var( "x" ) ) );
        default:
            return eq( var( "x" ), boolean( chance( rng, 0.5 ) ) );
        }
    }
    switch ( pick( rng, 4 ) )
    {
    case 0:
        return neg( random_register_formula( rng, depth - 1, with_variable ) );
    case 1:
        return conj( random_register_formula( rng, depth - 1, with_variable ),
                     random_register_formula( rng, depth - 1, with_variable ) );
    case 2:
        return disj( random_register_formula( rng, depth - 1, with_variable ),
                     random_register_formula( rng, depth - 1, with_variable ) );
    default:
        return impl( random_register_formula( rng, depth - 1, with_variable ),
                     random_register_formula( rng, depth - 1, with_variable ) );
    }
}

Formula random_counter_formula( Rng& rng, int depth )
{
    using namespace terms;
    using namespace formulas;
    if ( depth <= 0 || chance( rng, 0.3 ) )
    {
        switch ( pick( rng, 7 ) )
        {
        case 0:
            return eq( var( "c" ), nnc( numeral( pick( rng, 4 ) ) ) );
        case 1:
            return eq( var( "c" ), empty() );
        case 2:
            return eq( reply_of( "iszero", var( "c" ) ), reply( chance( rng, 0.5 ) ? Reply::t : Reply::f ) );
        case 3:
            return eq( derive( "decr", var( "c" ) ), nnc( numeral( pick( rng, 3 ) ) ) );
        case 4:
            return exists( "k", Sort::nat, eq( var( "c" ), nnc( succ( var( "k" ) ) ) ) );
        case 5:
            return eq( var( "c" ), nnc( var( "n" ) ) );
        default:
            return chance( rng, 0.5 ) ? top() : bottom();
        }
    }
    switch ( pick( rng, 3 ) )
    {
    case 0:
        return neg( random_counter_formula( rng, depth - 1 ) );
    case 1:
        return conj( random_counter_formula( rng, depth - 1 ), random_counter_formula( rng, depth - 1 ) );
    default:
        return disj( random_counter_formula( rng, depth - 1 ), random_counter_formula( rng, depth - 1 ) );
    }
}

// ---------------------------------------------------------------------------
// Proof generation

namespace {

AlgebraConfig register_config()
{
    AlgebraConfig cfg;
    cfg.algebra = AlgebraId::boolreg;
    return cfg;
}

bool valid( const Formula& p, const Formula& q )
{
    return entails( p, q, register_config() ).kind == EntailVerdict::Kind::valid;
}

ProofPtr make_node( RuleId rule, std::vector<ProofPtr> premises, std::optional<AssertedSeq> conclusion )
{
    auto n = std::make_shared<ProofNode>();
    n->rule = rule;
    n->premises = std::move( premises );
    n->conclusion = std::move( conclusion );
    return n;
}

bool has_repetition( const ProofNode& n )
{
    if ( n.rule == RuleId::r5 || n.rule == RuleId::rep_intro )
        return true;
    for ( const auto& p : n.premises )
        if ( has_repetition( *p ) )
            return true;
    return false;
}

} // namespace

ProofGenerator::ProofGenerator( std::uint64_t seed, int max_depth ) : _rng{ seed }, _max_depth{ max_depth } {}

GeneratedProof ProofGenerator::axiom()
{
    using namespace terms;
    using namespace formulas;
    static const char* const methods[] = { "get", "set:t", "set:f", "flip" };
    const std::string focus = chance( _rng, 0.8 ) ? "r" : "q";
    const std::string method = methods[ pick( _rng, 4 ) ];
    const Formula p = random_register_formula( _rng, 2, chance( _rng, 0.3 ) );
    auto reply_is = [ & ]( Reply r ) { return eq( reply_of( method, var( focus ) ), reply( r ) ); };
    auto after = [ & ] { return substitute_derive( p, focus, method ); };
    auto seq = [ & ]( Instruction i ) { return SequenceTerm::instr( std::move( i ) ); };

    RuleId rule = static_cast<RuleId>( pick( _rng, 11 ) );
    AssertedSeq c{ 1, p, seq( Instruction::halt() ), 0, p };
    switch ( rule )
    {
    case RuleId::a1:
        c = { 1, conj( neg( reply_is( Reply::d ) ), after() ), seq( Instruction::basic( focus, method ) ), 1, p };
        break;
    case RuleId::a2:
        c = { 1, reply_is( Reply::d ), seq( Instruction::basic( focus, method ) ), 0, bottom() };
        break;
    case RuleId::a3:
        c = { 1, conj( reply_is( Reply::t ), after() ), seq( Instruction::pos_test( focus, method ) ), 1, p };
        break;
    case RuleId::a4:
        c = { 1, conj( reply_is( Reply::f ), after() ), seq( Instruction::pos_test( focus, method ) ), 2, p };
        break;
    case RuleId::a5:
        c = { 1, reply_is( Reply::d ), seq( Instruction::pos_test( focus, method ) ), 0, bottom() };
        break;
    case RuleId::a6:
        c = { 1, conj( reply_is( Reply::t ), after() ), seq( Instruction::neg_test( focus, method ) ), 2, p };
        break;
    case RuleId::a7:
        c = { 1, conj( reply_is( Reply::f ), after() ), seq( Instruction::neg_test( focus, method ) ), 1, p };
        break;
    case RuleId::a8:
        c = { 1, reply_is( Reply::d ), seq( Instruction::neg_test( focus, method ) ), 0, bottom() };
        break;
    case RuleId::a9:
    {
        std::uint64_t k = 1 + pick( _rng, 3 );
        c = { 1, p, seq( Instruction::jump( k ) ), k, p };
        break;
    }
    case RuleId::a10:
        c = { 1, top(), seq( Instruction::jump( 0 ) ), 0, bottom() };
        break;
    default:
        rule = RuleId::a11;
        break;
    }
    return { make_node( rule, {}, c ), c, 0 };
}

std::optional<GeneratedProof> ProofGenerator::extend( const GeneratedProof& g )
{
    using namespace formulas;
    const AssertedSeq& c = g.conclusion;
    const int depth = g.depth + 1;
    auto done = [ & ]( ProofPtr node, AssertedSeq concl, int d = -1 ) {
        return std::optional<GeneratedProof>{ GeneratedProof{ std::move( node ), std::move( concl ), d < 0 ? depth : d } };
    };
    const SeqLength len = length_of( c.seq );

    switch ( pick( _rng, 11 ) )
    {
    case 0: // R1
    {
        if ( c.exit == 0 )
            return std::nullopt;
        // A second segment entered where the first exits, bridged by consequence.
        for ( int attempt = 0; attempt < 20; ++attempt )
        {
            const GeneratedProof& other = _pool[ pick( _rng, _pool.size() ) ];
            if ( other.conclusion.entry != c.exit || other.depth + 2 > _max_depth )
                continue;
            if ( !valid( c.post, other.conclusion.pre ) )
                continue;
            AssertedSeq bridged = other.conclusion;
            bridged.pre = c.post;
            ProofPtr bridge = make_node( RuleId::r10, { other.proof }, bridged );
            AssertedSeq concl{ c.entry, c.pre, SequenceTerm::concat( c.seq, bridged.seq ), bridged.exit, bridged.post };
            int d = std::max( g.depth, other.depth + 1 ) + 1;
            return done( make_node( RuleId::r1, { g.proof, bridge }, chance( _rng, 0.5 ) ? std::optional{ concl } : std::nullopt ),
                         concl, d );
        }
        if ( c.exit == 1 )
        {
            AssertedSeq next{ 1, c.post, SequenceTerm::instr( Instruction::halt() ), 0, c.post };
            ProofPtr ax = make_node( RuleId::a11, {}, next );
            AssertedSeq concl{ c.entry, c.pre, SequenceTerm::concat( c.seq, next.seq ), 0, c.post };
            return done( make_node( RuleId::r1, { g.proof, ax }, concl ), concl );
        }
        return std::nullopt;
    }
    case 1: // R2
    {
        if ( c.exit < 2 )
            return std::nullopt;
        std::vector<SequenceTerm> parts;
        std::uint64_t skip = 1 + pick( _rng, c.exit - 1 );
        for ( std::uint64_t i = 0; i < skip; ++i )
            parts.push_back( SequenceTerm::instr( chance( _rng, 0.5 ) ? Instruction::halt() : Instruction::basic( "r", "get" ) ) );
        AssertedSeq concl{ c.entry, c.pre, SequenceTerm::concat( c.seq, concat_all( parts ) ), c.exit - skip, c.post };
        return done( make_node( RuleId::r2, { g.proof }, concl ), concl );
    }
    case 2: // R3
    {
        if ( c.exit != 0 )
            return std::nullopt;
        AssertedSeq concl{ c.entry, c.pre, SequenceTerm::concat( c.seq, random_register_segment( _rng, 3, true ) ), 0,
                           c.post };
        return done( make_node( RuleId::r3, { g.proof }, concl ), concl );
    }
    case 3: // R4
    {
        SequenceTerm front = random_register_segment( _rng, 3, false );
        AssertedSeq concl{ c.entry + *length_of( front ), c.pre, SequenceTerm::concat( front, c.seq ), c.exit, c.post };
        return done( make_node( RuleId::r4, { g.proof }, concl ), concl );
    }
    case 4: // R6
    {
        AssertedSeq narrower = c;
        narrower.pre = conj( c.pre, random_register_formula( _rng, 1, false ) );
        ProofPtr other = make_node( RuleId::r10, { g.proof }, narrower );
        AssertedSeq concl{ c.entry, disj( c.pre, narrower.pre ), c.seq, c.exit, c.post };
        return done( make_node( RuleId::r6, { g.proof, other }, std::nullopt ), concl, depth + 1 );
    }
    case 5: // R7
    {
        std::set<std::string> used = foci_of( c.seq );
        std::string free_focus = !used.contains( "q" ) ? "q" : !used.contains( "s" ) ? "s" : "";
        if ( free_focus.empty() )
            return std::nullopt;
        Formula inv = rename( random_register_formula( _rng, 1, false ), "r", free_focus );
        for ( const auto& f : free_foci( inv ) )
            if ( used.contains( f ) )
                return std::nullopt;
        AssertedSeq concl{ c.entry, conj( c.pre, inv ), c.seq, c.exit, conj( c.post, inv ) };
        return done( make_node( RuleId::r7, { g.proof }, concl ), concl );
    }
    case 6: // R8
    {
        if ( free_names( c.post ).contains( "x" ) || foci_of( c.seq ).contains( "x" ) )
            return std::nullopt;
        auto sorts = free_variables( c.pre );
        auto it = sorts.find( "x" );
        Sort sort = it == sorts.end() ? Sort::boolean : it->second;
        AssertedSeq concl{ c.entry, exists( "x", sort, c.pre ), c.seq, c.exit, c.post };
        return done( make_node( RuleId::r8, { g.proof }, concl ), concl );
    }
    case 7: // R9
    {
        std::set<std::string> used = foci_of( c.seq );
        std::string from = chance( _rng, 0.5 ) ? "x" : "q";
        std::string to = from == "x" ? "z" : "s";
        if ( used.contains( from ) || used.contains( to ) )
            return std::nullopt;
        if ( free_names( c.pre ).contains( to ) || free_names( c.post ).contains( to ) )
            return std::nullopt;
        auto n = std::make_shared<ProofNode>();
        n->rule = RuleId::r9;
        n->premises = { g.proof };
        n->rename_from = from;
        n->rename_to = to;
        AssertedSeq concl{ c.entry, rename( c.pre, from, to ), c.seq, c.exit, rename( c.post, from, to ) };
        return done( n, concl );
    }
    case 8: // R10
    {
        Formula pre = chance( _rng, 0.5 ) ? conj( c.pre, random_register_formula( _rng, 1, false ) ) : c.pre;
        Formula post = chance( _rng, 0.5 ) ? disj( c.post, random_register_formula( _rng, 1, false ) ) : c.post;
        if ( chance( _rng, 0.3 ) )
        {
            // Occasionally a genuinely different formula that is still implied.
            Formula alt = random_register_formula( _rng, 2, false );
            if ( valid( alt, c.pre ) )
                pre = alt;
        }
        AssertedSeq concl{ c.entry, pre, c.seq, c.exit, post };
        auto n = std::make_shared<ProofNode>();
        n->rule = RuleId::r10;
        n->premises = { g.proof };
        if ( chance( _rng, 0.5 ) )
        {
            n->strengthen = std::pair{ pre, c.pre };
            n->weaken = std::pair{ c.post, post };
        }
        else
            n->conclusion = concl;
        return done( n, concl );
    }
    case 9: // REP
    {
        if ( c.exit != 0 )
            return std::nullopt;
        AssertedSeq concl{ c.entry, c.pre, SequenceTerm::repeat( c.seq ), 0, c.post };
        return done( make_node( RuleId::rep_intro, { g.proof }, chance( _rng, 0.5 ) ? std::optional{ concl } : std::nullopt ), concl );
    }
    default: // R5
    {
        if ( has_repetition( *g.proof ) || !len )
            return std::nullopt;
        const SequenceTerm rep = SequenceTerm::repeat( c.seq );
        auto n = std::make_shared<ProofNode>();
        n->rule = RuleId::r5;
        n->k = 1;
        ProofPtr sub;
        if ( c.exit == 0 )
        {
            n->hyps = { AssertedSeq{ c.entry, c.pre, rep, 0, c.post } };
            sub = make_node( RuleId::r3, { g.proof },
                             AssertedSeq{ c.entry, c.pre, SequenceTerm::concat( c.seq, rep ), 0, c.post } );
        }
        else if ( c.exit == 1 && valid( c.post, c.pre ) )
        {
            // The segment re-establishes its own precondition and falls
            // through, so the loop never leaves: any postcondition goes.
            Formula goal = random_register_formula( _rng, 1, false );
            n->hyps = { AssertedSeq{ c.entry, c.pre, rep, 0, goal } };
            auto hyp = std::make_shared<ProofNode>();
            hyp->rule = RuleId::hyp;
            hyp->hyp_index = 1;
            AssertedSeq entered{ 1, c.post, rep, 0, goal };
            ProofPtr bridge = make_node( RuleId::r10, { hyp }, entered );
            if ( c.entry != 1 )
                return std::nullopt;
            sub = make_node( RuleId::r1, { g.proof, bridge }, std::nullopt );
        }
        else
            return std::nullopt;
        n->subproofs = { sub };
        if ( chance( _rng, 0.3 ) )
        {
            // Same hypothesis twice, concluding the second copy.
            n->hyps.push_back( n->hyps.front() );
            n->subproofs.push_back( sub );
            n->k = 2;
        }
        return done( n, n->hyps[ n->k - 1 ], depth + 1 );
    }
    }
}

GeneratedProof ProofGenerator::next()
{
    while ( true )
    {
        if ( _pool.size() < 20 || chance( _rng, 0.25 ) )
        {
            GeneratedProof g = axiom();
            _pool.push_back( g );
            return g;
        }
        const GeneratedProof& base = _pool[ pick( _rng, _pool.size() ) ];
        if ( base.depth >= _max_depth )
            continue;
        std::optional<GeneratedProof> g = extend( base );
        if ( !g || g->depth > _max_depth )
            continue;
        if ( _pool.size() >= 400 )
            _pool.erase( _pool.begin() + static_cast<std::ptrdiff_t>( pick( _rng, _pool.size() ) ) );
        _pool.push_back( *g );
        return *g;
    }
}

} // namespace pga::testing
