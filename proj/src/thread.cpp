#include "pga/thread.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <tuple>

namespace pga {

namespace {

bool has_cycle( const std::vector<ThreadNode>& nodes, std::size_t root )
{
    // Iterative three-colour DFS.
    enum class Colour
    {
        white,
        grey,
        black
    };
    std::vector<Colour> colour( nodes.size(), Colour::white );
    std::vector<std::pair<std::size_t, int>> stack{ { root, 0 } };
    colour[ root ] = Colour::grey;
    while ( !stack.empty() )
    {
        auto& [ n, child ] = stack.back();
        const ThreadNode& node = nodes[ n ];
        if ( node.kind != ThreadNode::Kind::branch || child == 2 )
        {
            colour[ n ] = Colour::black;
            stack.pop_back();
            continue;
        }
        std::size_t next = child == 0 ? node.on_true : node.on_false;
        ++child;
        if ( colour[ next ] == Colour::grey )
            return true;
        if ( colour[ next ] == Colour::white )
        {
            colour[ next ] = Colour::grey;
            stack.emplace_back( next, 0 );
        }
    }
    return false;
}

} // namespace

RegularThread::RegularThread( std::vector<ThreadNode> nodes, std::size_t root )
{
    if ( root >= nodes.size() )
        throw std::invalid_argument{ "thread root out of range" };

    // Breadth-first renumbering drops unreachable nodes.
    std::vector<std::size_t> renumber( nodes.size(), SIZE_MAX );
    std::deque<std::size_t> queue{ root };
    std::vector<std::size_t> order;
    renumber[ root ] = 0;
    while ( !queue.empty() )
    {
        std::size_t n = queue.front();
        queue.pop_front();
        order.push_back( n );
        const ThreadNode& node = nodes[ n ];
        if ( node.kind != ThreadNode::Kind::branch )
            continue;
        for ( std::size_t next : { node.on_true, node.on_false } )
        {
            if ( next >= nodes.size() )
                throw std::invalid_argument{ "thread edge out of range" };
            if ( renumber[ next ] == SIZE_MAX )
            {
                renumber[ next ] = order.size() + queue.size();
                queue.push_back( next );
            }
        }
    }
    _nodes.reserve( order.size() );
    for ( std::size_t n : order )
    {
        ThreadNode node = nodes[ n ];
        if ( node.kind == ThreadNode::Kind::branch )
        {
            node.on_true = renumber[ node.on_true ];
            node.on_false = renumber[ node.on_false ];
        }
        _nodes.push_back( std::move( node ) );
    }
    _acyclic = !has_cycle( _nodes, 0 );
}

RegularThread RegularThread::stop()
{
    ThreadNode node;
    node.kind = ThreadNode::Kind::stop;
    return RegularThread{ { node }, 0 };
}

RegularThread RegularThread::dead()
{
    return RegularThread{ { ThreadNode{} }, 0 };
}

RegularThread extract( const CanonicalSequence& seq )
{
    // Raw node ids: 0 = stop, 1 = dead, 1 + p = action at representative p.
    constexpr std::size_t stop_id = 0;
    constexpr std::size_t dead_id = 1;
    const std::uint64_t positions = seq.positions();
    const SeqLength len = seq.length();

    auto resolve = [ & ]( std::uint64_t pos ) -> std::size_t {
        std::set<std::uint64_t> chain;
        while ( true )
        {
            if ( len && pos > *len )
                return dead_id;
            std::uint64_t rep = seq.representative( pos );
            const Instruction& instr = seq.at( rep );
            if ( instr.kind == InstrKind::halt )
                return stop_id;
            if ( instr.kind != InstrKind::jump )
                return 1 + rep;
            // #0, or a jump chain that comes back to itself, never reaches
            // an instruction that does something.
            if ( instr.offset == 0 || !chain.insert( rep ).second )
                return dead_id;
            pos = rep + instr.offset;
        }
    };

    std::vector<ThreadNode> raw( 2 + positions );
    raw[ stop_id ].kind = ThreadNode::Kind::stop;
    raw[ dead_id ].kind = ThreadNode::Kind::dead;
    for ( std::uint64_t p = 1; p <= positions; ++p )
    {
        const Instruction& instr = seq.at( p );
        if ( !instr.is_action() )
            continue;
        ThreadNode& node = raw[ 1 + p ];
        node.kind = ThreadNode::Kind::branch;
        node.focus = instr.focus;
        node.method = instr.method;
        std::size_t next = resolve( p + 1 );
        std::size_t skip = instr.kind == InstrKind::basic ? next : resolve( p + 2 );
        node.on_true = instr.kind == InstrKind::neg_test ? skip : next;
        node.on_false = instr.kind == InstrKind::neg_test ? next : skip;
    }
    return RegularThread{ std::move( raw ), resolve( 1 ) };
}

CanonicalSequence embed( const SequenceTerm& seq, std::uint64_t entry, std::uint64_t exit )
{
    if ( entry < 1 )
        throw std::invalid_argument{ "entry must be positive" };
    SequenceTerm whole = SequenceTerm::concat( SequenceTerm::instr( Instruction::jump( entry ) ), seq );
    if ( exit > 0 )
    {
        // sigma(e) = #0^(e-1) ; !
        for ( std::uint64_t k = 1; k < exit; ++k )
            whole = SequenceTerm::concat( whole, SequenceTerm::instr( Instruction::jump( 0 ) ) );
        whole = SequenceTerm::concat( whole, SequenceTerm::instr( Instruction::halt() ) );
    }
    return normalize( whole );
}

namespace {

std::uint64_t max_counter( const ServiceFamily& u )
{
    std::uint64_t best = 0;
    for ( const auto& entry : u )
        if ( entry.second.kind == Service::Kind::counter )
            best = std::max( best, entry.second.content );
    return best;
}

} // namespace

ApplyResult apply( const RegularThread& thread, const ServiceFamily& family, std::uint64_t bound )
{
    ServiceFamily u = family;
    std::size_t at = thread.root();
    std::set<std::pair<std::size_t, ServiceFamily>> seen;
    const std::uint64_t budget = bound * thread.size() * ( max_counter( family ) + 1 );
    std::uint64_t steps = 0;

    while ( true )
    {
        const ThreadNode& node = thread.node( at );
        if ( node.kind == ThreadNode::Kind::stop )
            return { false, std::move( u ) };
        if ( node.kind == ThreadNode::Kind::dead )
            return { false, {} };

        auto it = u.find( node.focus );
        if ( it == u.end() )
            return { false, {} };
        StepResult step = svc_step( it->second, node.method );
        if ( step.reply == Reply::d )
            return { false, {} };
        it->second = step.next;
        at = step.reply == Reply::t ? node.on_true : node.on_false;

        if ( !thread.acyclic() )
        {
            if ( !seen.emplace( at, u ).second )
                return { false, {} };
            if ( ++steps > budget )
                return { true, {} };
        }
    }
}

namespace {

// Block index per node for the coarsest bisimulation on `nodes`.
std::vector<std::size_t> bisimulation_blocks( const std::vector<ThreadNode>& nodes )
{
    using Key = std::tuple<int, std::string, std::string, std::size_t, std::size_t>;
    std::vector<std::size_t> block( nodes.size(), 0 );
    std::size_t count = 0;
    {
        std::map<Key, std::size_t> ids;
        for ( std::size_t i = 0; i < nodes.size(); ++i )
        {
            Key key{ static_cast<int>( nodes[ i ].kind ), nodes[ i ].focus, nodes[ i ].method, 0, 0 };
            block[ i ] = ids.try_emplace( key, ids.size() ).first->second;
        }
        count = ids.size();
    }
    while ( true )
    {
        std::map<Key, std::size_t> ids;
        std::vector<std::size_t> next( nodes.size() );
        for ( std::size_t i = 0; i < nodes.size(); ++i )
        {
            const ThreadNode& n = nodes[ i ];
            bool branch = n.kind == ThreadNode::Kind::branch;
            Key key{ static_cast<int>( block[ i ] ), {}, {}, branch ? block[ n.on_true ] : 0,
                     branch ? block[ n.on_false ] : 0 };
            next[ i ] = ids.try_emplace( key, ids.size() ).first->second;
        }
        block = std::move( next );
        if ( ids.size() == count )
            return block;
        count = ids.size();
    }
}

} // namespace

RegularThread minimize( const RegularThread& thread )
{
    const auto& nodes = thread.nodes();
    std::vector<std::size_t> block = bisimulation_blocks( nodes );
    std::size_t count = *std::max_element( block.begin(), block.end() ) + 1;
    std::vector<ThreadNode> quotient( count );
    for ( std::size_t i = 0; i < nodes.size(); ++i )
    {
        ThreadNode node = nodes[ i ];
        if ( node.kind == ThreadNode::Kind::branch )
        {
            node.on_true = block[ node.on_true ];
            node.on_false = block[ node.on_false ];
        }
        quotient[ block[ i ] ] = std::move( node );
    }
    return RegularThread{ std::move( quotient ), block[ thread.root() ] };
}

bool bisimilar( const RegularThread& a, const RegularThread& b )
{
    std::vector<ThreadNode> joint = a.nodes();
    const std::size_t offset = joint.size();
    for ( ThreadNode node : b.nodes() )
    {
        if ( node.kind == ThreadNode::Kind::branch )
        {
            node.on_true += offset;
            node.on_false += offset;
        }
        joint.push_back( std::move( node ) );
    }
    std::vector<std::size_t> block = bisimulation_blocks( joint );
    return block[ a.root() ] == block[ offset + b.root() ];
}

std::string dump( const RegularThread& thread )
{
    std::string out;
    for ( std::size_t i = 0; i < thread.size(); ++i )
    {
        const ThreadNode& node = thread.node( i );
        out += "n" + std::to_string( i ) + ": ";
        switch ( node.kind )
        {
        case ThreadNode::Kind::stop:
            out += "stop";
            break;
        case ThreadNode::Kind::dead:
            out += "dead";
            break;
        case ThreadNode::Kind::branch:
            out += "branch " + node.focus + "." + node.method + " -> n" + std::to_string( node.on_true ) + " / n" +
                   std::to_string( node.on_false );
            break;
        }
        out += '\n';
    }
    return out;
}

} // namespace pga
