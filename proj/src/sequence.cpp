#include "pga/sequence.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <limits>
#include <sstream>

namespace pga {

ParseError::ParseError( std::size_t column, const std::string& message )
        : std::runtime_error{ "column " + std::to_string( column ) + ": " + message }, _column{ column }, _detail{ message }
{
}

Instruction Instruction::basic( std::string focus, std::string method )
{
    return { InstrKind::basic, std::move( focus ), std::move( method ), 0 };
}

Instruction Instruction::pos_test( std::string focus, std::string method )
{
    return { InstrKind::pos_test, std::move( focus ), std::move( method ), 0 };
}

Instruction Instruction::neg_test( std::string focus, std::string method )
{
    return { InstrKind::neg_test, std::move( focus ), std::move( method ), 0 };
}

Instruction Instruction::jump( std::uint64_t offset )
{
    return { InstrKind::jump, {}, {}, offset };
}

Instruction Instruction::halt()
{
    return { InstrKind::halt, {}, {}, 0 };
}

std::string to_string( const Instruction& instr )
{
    switch ( instr.kind )
    {
    case InstrKind::basic:
        return instr.focus + "." + instr.method;
    case InstrKind::pos_test:
        return "+" + instr.focus + "." + instr.method;
    case InstrKind::neg_test:
        return "-" + instr.focus + "." + instr.method;
    case InstrKind::jump:
        return "#" + std::to_string( instr.offset );
    case InstrKind::halt:
        return "!";
    }
    return "?";
}

std::string to_string( SeqLength len )
{
    return len ? std::to_string( *len ) : std::string{ "omega" };
}

// ---------------------------------------------------------------------------
// SequenceTerm

struct SequenceTerm::Node
{
    Kind kind;
    Instruction instr;
    std::optional<SequenceTerm> lhs;
    std::optional<SequenceTerm> rhs;
    std::uint64_t exponent = 0;
};

SequenceTerm SequenceTerm::instr( Instruction instr )
{
    return SequenceTerm{ std::make_shared<const Node>( Node{ Kind::instr, std::move( instr ), {}, {}, 0 } ) };
}

SequenceTerm SequenceTerm::concat( SequenceTerm lhs, SequenceTerm rhs )
{
    return SequenceTerm{ std::make_shared<const Node>(
            Node{ Kind::concat, {}, std::move( lhs ), std::move( rhs ), 0 } ) };
}

SequenceTerm SequenceTerm::power( SequenceTerm base, std::uint64_t exponent )
{
    return SequenceTerm{ std::make_shared<const Node>( Node{ Kind::power, {}, std::move( base ), {}, exponent } ) };
}

SequenceTerm SequenceTerm::repeat( SequenceTerm body )
{
    return SequenceTerm{ std::make_shared<const Node>( Node{ Kind::repeat, {}, std::move( body ), {}, 0 } ) };
}

SequenceTerm::Kind SequenceTerm::kind() const
{
    return _node->kind;
}

const Instruction& SequenceTerm::instruction() const
{
    assert( _node->kind == Kind::instr );
    return _node->instr;
}

const SequenceTerm& SequenceTerm::left() const
{
    assert( _node->lhs );
    return *_node->lhs;
}

const SequenceTerm& SequenceTerm::right() const
{
    assert( _node->rhs );
    return *_node->rhs;
}

std::uint64_t SequenceTerm::exponent() const
{
    return _node->exponent;
}

bool operator==( const SequenceTerm& a, const SequenceTerm& b )
{
    if ( a._node == b._node )
        return true;
    if ( a.kind() != b.kind() )
        return false;
    switch ( a.kind() )
    {
    case SequenceTerm::Kind::instr:
        return a.instruction() == b.instruction();
    case SequenceTerm::Kind::concat:
        return a.left() == b.left() && a.right() == b.right();
    case SequenceTerm::Kind::power:
        return a.exponent() == b.exponent() && a.left() == b.left();
    case SequenceTerm::Kind::repeat:
        return a.left() == b.left();
    }
    return false;
}

namespace {

void print_term( const SequenceTerm& term, std::string& out );

void print_operand( const SequenceTerm& term, std::string& out )
{
    if ( term.kind() == SequenceTerm::Kind::concat )
    {
        out += '(';
        print_term( term, out );
        out += ')';
    }
    else if ( term.kind() == SequenceTerm::Kind::instr )
    {
        // "(!)^w" reads better than "!^w" and both parse.
        out += '(';
        out += to_string( term.instruction() );
        out += ')';
    }
    else
        print_term( term, out );
}

void print_term( const SequenceTerm& term, std::string& out )
{
    switch ( term.kind() )
    {
    case SequenceTerm::Kind::instr:
        out += to_string( term.instruction() );
        break;
    case SequenceTerm::Kind::concat:
        print_term( term.left(), out );
        out += " ; ";
        // Right operands that are concatenations need parentheses to keep
        // the printed association.
        if ( term.right().kind() == SequenceTerm::Kind::concat )
        {
            out += '(';
            print_term( term.right(), out );
            out += ')';
        }
        else
            print_term( term.right(), out );
        break;
    case SequenceTerm::Kind::power:
        print_operand( term.left(), out );
        out += '^';
        out += std::to_string( term.exponent() );
        break;
    case SequenceTerm::Kind::repeat:
        print_operand( term.left(), out );
        out += "^w";
        break;
    }
}

} // namespace

std::string to_string( const SequenceTerm& term )
{
    std::string out;
    print_term( term, out );
    return out;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class SequenceParser
{
public:
    explicit SequenceParser( std::string_view text ) : _text{ text } {}

    SequenceTerm parse()
    {
        skip_ws();
        if ( at_end() )
            fail( "empty instruction sequence" );
        SequenceTerm result = parse_seq();
        skip_ws();
        if ( !at_end() )
            fail( std::string{ "unexpected '" } + peek() + "'" );
        return result;
    }

private:
    std::string_view _text;
    std::size_t _pos = 0;

    [[noreturn]] void fail( const std::string& message ) const { throw ParseError{ _pos + 1, message }; }

    bool at_end() const { return _pos >= _text.size(); }
    char peek() const { return at_end() ? '\0' : _text[ _pos ]; }

    void skip_ws()
    {
        while ( !at_end() && std::isspace( static_cast<unsigned char>( _text[ _pos ] ) ) )
            ++_pos;
    }

    bool accept( char c )
    {
        skip_ws();
        if ( peek() == c )
        {
            ++_pos;
            return true;
        }
        return false;
    }

    SequenceTerm parse_seq()
    {
        SequenceTerm acc = parse_item();
        while ( accept( ';' ) )
            acc = SequenceTerm::concat( acc, parse_item() );
        return acc;
    }

    SequenceTerm parse_item()
    {
        SequenceTerm acc = parse_atom();
        while ( accept( '^' ) )
        {
            skip_ws();
            if ( peek() == 'w' )
            {
                ++_pos;
                acc = SequenceTerm::repeat( acc );
            }
            else if ( peek() == '-' )
                fail( "negative exponent" );
            else
                acc = SequenceTerm::power( acc, parse_nat( "exponent" ) );
        }
        return acc;
    }

    std::uint64_t parse_nat( const char* what )
    {
        skip_ws();
        if ( !std::isdigit( static_cast<unsigned char>( peek() ) ) )
            fail( std::string{ "expected " } + what );
        std::uint64_t value = 0;
        while ( std::isdigit( static_cast<unsigned char>( peek() ) ) )
        {
            auto digit = static_cast<std::uint64_t>( peek() - '0' );
            if ( value > ( std::numeric_limits<std::uint64_t>::max() - digit ) / 10 )
                fail( std::string{ what } + " out of range" );
            value = value * 10 + digit;
            ++_pos;
        }
        return value;
    }

    static bool ident_start( char c ) { return std::isalpha( static_cast<unsigned char>( c ) ) || c == '_'; }
    static bool ident_char( char c ) { return std::isalnum( static_cast<unsigned char>( c ) ) || c == '_'; }

    std::string parse_ident( bool allow_colon )
    {
        skip_ws();
        if ( !ident_start( peek() ) )
            fail( "expected identifier" );
        std::size_t start = _pos;
        while ( ident_char( peek() ) || ( allow_colon && peek() == ':' ) )
            ++_pos;
        return std::string{ _text.substr( start, _pos - start ) };
    }

    SequenceTerm parse_atom()
    {
        skip_ws();
        if ( at_end() )
            fail( "unexpected end of input" );
        char c = peek();
        if ( c == '(' )
        {
            ++_pos;
            skip_ws();
            if ( peek() == ')' )
                fail( "empty term" );
            SequenceTerm inner = parse_seq();
            if ( !accept( ')' ) )
                fail( "expected ')'" );
            return inner;
        }
        if ( c == '!' )
        {
            ++_pos;
            return SequenceTerm::instr( Instruction::halt() );
        }
        if ( c == '#' )
        {
            ++_pos;
            skip_ws();
            if ( peek() == '-' )
                fail( "negative jump offset" );
            return SequenceTerm::instr( Instruction::jump( parse_nat( "jump offset" ) ) );
        }
        InstrKind kind = InstrKind::basic;
        if ( c == '+' || c == '-' )
        {
            kind = c == '+' ? InstrKind::pos_test : InstrKind::neg_test;
            ++_pos;
        }
        std::string focus = parse_ident( false );
        if ( !accept( '.' ) )
            fail( "expected '.' between focus and method" );
        std::string method = parse_ident( true );
        return SequenceTerm::instr( Instruction{ kind, std::move( focus ), std::move( method ), 0 } );
    }
};

} // namespace

SequenceTerm parse_sequence( std::string_view text )
{
    return SequenceParser{ text }.parse();
}

SequenceTerm concat_all( const std::vector<SequenceTerm>& parts )
{
    if ( parts.empty() )
        throw std::invalid_argument{ "concatenation of no terms" };
    SequenceTerm acc = parts.front();
    for ( std::size_t i = 1; i < parts.size(); ++i )
        acc = SequenceTerm::concat( acc, parts[ i ] );
    return acc;
}

namespace {

template <typename Fn>
void visit_instructions( const SequenceTerm& term, Fn&& fn )
{
    switch ( term.kind() )
    {
    case SequenceTerm::Kind::instr:
        fn( term.instruction() );
        break;
    case SequenceTerm::Kind::concat:
        visit_instructions( term.left(), fn );
        visit_instructions( term.right(), fn );
        break;
    case SequenceTerm::Kind::power:
        if ( term.exponent() == 0 )
            fn( Instruction::jump( 0 ) );
        else
            visit_instructions( term.left(), fn );
        break;
    case SequenceTerm::Kind::repeat:
        visit_instructions( term.left(), fn );
        break;
    }
}

} // namespace

std::set<std::string> foci_of( const SequenceTerm& term )
{
    std::set<std::string> foci;
    visit_instructions( term, [ & ]( const Instruction& i ) {
        if ( i.is_action() )
            foci.insert( i.focus );
    } );
    return foci;
}

std::uint64_t max_jump( const SequenceTerm& term )
{
    std::uint64_t best = 0;
    visit_instructions( term, [ & ]( const Instruction& i ) {
        if ( i.kind == InstrKind::jump )
            best = std::max( best, i.offset );
    } );
    return best;
}

// ---------------------------------------------------------------------------
// Canonical form

CanonicalSequence::CanonicalSequence( std::vector<Instruction> prefix, std::vector<Instruction> period )
        : _prefix{ std::move( prefix ) }, _period{ std::move( period ) }
{
    if ( _prefix.empty() && _period.empty() )
        throw std::invalid_argument{ "instruction sequences are non-empty" };

    if ( !_period.empty() )
    {
        // Primitive root of the period.
        const std::size_t n = _period.size();
        for ( std::size_t d = 1; d <= n; ++d )
        {
            if ( n % d != 0 )
                continue;
            bool ok = true;
            for ( std::size_t i = d; i < n && ok; ++i )
                ok = _period[ i ] == _period[ i - d ];
            if ( ok )
            {
                _period.resize( d );
                break;
            }
        }
        // Absorb prefix tail into the period by rotation.
        while ( !_prefix.empty() && _prefix.back() == _period.back() )
        {
            _prefix.pop_back();
            std::rotate( _period.rbegin(), _period.rbegin() + 1, _period.rend() );
        }
    }
}

SeqLength CanonicalSequence::length() const
{
    if ( finite() )
        return _prefix.size();
    return std::nullopt;
}

std::uint64_t CanonicalSequence::representative( std::uint64_t pos ) const
{
    assert( pos >= 1 );
    if ( pos <= _prefix.size() )
        return pos;
    assert( !_period.empty() );
    return _prefix.size() + ( pos - 1 - _prefix.size() ) % _period.size() + 1;
}

const Instruction& CanonicalSequence::at( std::uint64_t pos ) const
{
    std::uint64_t rep = representative( pos );
    if ( rep <= _prefix.size() )
        return _prefix[ rep - 1 ];
    return _period[ rep - 1 - _prefix.size() ];
}

SequenceTerm CanonicalSequence::to_term() const
{
    std::vector<SequenceTerm> parts;
    for ( const auto& i : _prefix )
        parts.push_back( SequenceTerm::instr( i ) );
    if ( !_period.empty() )
    {
        std::vector<SequenceTerm> body;
        for ( const auto& i : _period )
            body.push_back( SequenceTerm::instr( i ) );
        parts.push_back( SequenceTerm::repeat( concat_all( body ) ) );
    }
    return concat_all( parts );
}

std::string to_string( const CanonicalSequence& seq )
{
    return to_string( seq.to_term() );
}

namespace {

struct RawSequence
{
    std::vector<Instruction> prefix;
    std::vector<Instruction> period;

    bool infinite() const { return !period.empty(); }
};

RawSequence expand( const SequenceTerm& term )
{
    switch ( term.kind() )
    {
    case SequenceTerm::Kind::instr:
        return { { term.instruction() }, {} };
    case SequenceTerm::Kind::concat:
    {
        RawSequence lhs = expand( term.left() );
        if ( lhs.infinite() )
            return lhs; // X^w ; Y = X^w
        RawSequence rhs = expand( term.right() );
        lhs.prefix.insert( lhs.prefix.end(), rhs.prefix.begin(), rhs.prefix.end() );
        lhs.period = std::move( rhs.period );
        return lhs;
    }
    case SequenceTerm::Kind::power:
    {
        if ( term.exponent() == 0 )
            return { { Instruction::jump( 0 ) }, {} };
        RawSequence base = expand( term.left() );
        if ( base.infinite() )
            return base;
        RawSequence out;
        out.prefix.reserve( base.prefix.size() * term.exponent() );
        for ( std::uint64_t k = 0; k < term.exponent(); ++k )
            out.prefix.insert( out.prefix.end(), base.prefix.begin(), base.prefix.end() );
        return out;
    }
    case SequenceTerm::Kind::repeat:
    {
        RawSequence body = expand( term.left() );
        if ( body.infinite() )
            return body;
        return { {}, std::move( body.prefix ) };
    }
    }
    return {};
}

} // namespace

CanonicalSequence normalize( const SequenceTerm& term )
{
    RawSequence raw = expand( term );
    return CanonicalSequence{ std::move( raw.prefix ), std::move( raw.period ) };
}

bool seq_equal( const SequenceTerm& a, const SequenceTerm& b )
{
    return normalize( a ) == normalize( b );
}

SeqLength length_of( const SequenceTerm& term )
{
    return normalize( term ).length();
}

// ---------------------------------------------------------------------------
// Association-insensitive view

namespace {

void flatten_into( const SequenceTerm& term, FlatSequence& out )
{
    switch ( term.kind() )
    {
    case SequenceTerm::Kind::instr:
        out.push_back( FlatItem{ false, term.instruction(), {} } );
        break;
    case SequenceTerm::Kind::concat:
        flatten_into( term.left(), out );
        flatten_into( term.right(), out );
        break;
    case SequenceTerm::Kind::power:
        if ( term.exponent() == 0 )
            out.push_back( FlatItem{ false, Instruction::jump( 0 ), {} } );
        for ( std::uint64_t k = 0; k < term.exponent(); ++k )
            flatten_into( term.left(), out );
        break;
    case SequenceTerm::Kind::repeat:
        out.push_back( FlatItem{ true, {}, flatten( term.left() ) } );
        break;
    }
}

} // namespace

FlatSequence flatten( const SequenceTerm& term )
{
    FlatSequence out;
    flatten_into( term, out );
    return out;
}

SequenceTerm unflatten( const FlatSequence& items )
{
    std::vector<SequenceTerm> parts;
    parts.reserve( items.size() );
    for ( const auto& item : items )
        parts.push_back( item.is_repeat ? SequenceTerm::repeat( unflatten( item.body ) )
                                        : SequenceTerm::instr( item.instr ) );
    return concat_all( parts );
}

bool same_modulo_association( const SequenceTerm& a, const SequenceTerm& b )
{
    return a == b || flatten( a ) == flatten( b );
}

} // namespace pga
