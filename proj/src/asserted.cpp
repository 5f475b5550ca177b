#include "pga/asserted.hpp"

#include <cctype>
#include <stdexcept>

namespace pga {

std::string to_string( const AssertedSeq& a )
{
    return "{" + std::to_string( a.entry ) + " | " + to_string( a.pre ) + "} \"" + to_string( a.seq ) + "\" {" +
           std::to_string( a.exit ) + " | " + to_string( a.post ) + "}";
}

std::vector<AssertedSeq> expand_multi_exit( std::uint64_t entry, const Formula& pre, const SequenceTerm& seq,
                                            const std::vector<std::uint64_t>& exits, const Formula& post )
{
    if ( exits.empty() )
        throw std::invalid_argument{ "multi-exit assertion needs at least one exit" };
    std::vector<AssertedSeq> out;
    out.reserve( exits.size() );
    for ( std::uint64_t e : exits )
        out.push_back( AssertedSeq{ entry, pre, seq, e, post } );
    return out;
}

namespace {

class AssertedReader
{
public:
    AssertedReader( std::string_view text, std::size_t pos ) : _text{ text }, _pos{ pos } {}

    std::vector<AssertedSeq> read()
    {
        expect( '{' );
        std::vector<std::uint64_t> entries = numbers();
        if ( entries.size() != 1 )
            fail( "expected a single entry point" );
        if ( entries[ 0 ] < 1 )
            fail( "entry point must be positive" );
        expect( '|' );
        Formula pre = formula_until( '}' );
        expect( '}' );

        skip_ws();
        SequenceTerm seq = sequence();

        expect( '{' );
        std::vector<std::uint64_t> exits = numbers();
        expect( '|' );
        Formula post = formula_until( '}' );
        expect( '}' );
        return expand_multi_exit( entries[ 0 ], pre, seq, exits, post );
    }

    std::size_t position() const { return _pos; }

private:
    std::string_view _text;
    std::size_t _pos;

    [[noreturn]] void fail( const std::string& msg ) const { throw ParseError{ _pos + 1, msg }; }

    char peek() const { return _pos < _text.size() ? _text[ _pos ] : '\0'; }

    void skip_ws()
    {
        while ( _pos < _text.size() && std::isspace( static_cast<unsigned char>( _text[ _pos ] ) ) )
            ++_pos;
    }

    void expect( char c )
    {
        skip_ws();
        if ( peek() != c )
            fail( std::string{ "expected '" } + c + "'" );
        ++_pos;
    }

    std::vector<std::uint64_t> numbers()
    {
        std::vector<std::uint64_t> out;
        while ( true )
        {
            skip_ws();
            if ( !std::isdigit( static_cast<unsigned char>( peek() ) ) )
                fail( "expected a natural number" );
            std::uint64_t n = 0;
            while ( std::isdigit( static_cast<unsigned char>( peek() ) ) )
                n = n * 10 + static_cast<std::uint64_t>( _text[ _pos++ ] - '0' );
            out.push_back( n );
            skip_ws();
            if ( peek() != ',' )
                return out;
            ++_pos;
        }
    }

    Formula formula_until( char stop )
    {
        std::size_t start = _pos;
        while ( _pos < _text.size() && _text[ _pos ] != stop )
            ++_pos;
        try
        {
            return parse_formula( _text.substr( start, _pos - start ) );
        }
        catch ( const ParseError& e )
        {
            throw e.shifted( start );
        }
    }

    SequenceTerm sequence()
    {
        std::size_t start = _pos;
        std::size_t end = 0;
        if ( peek() == '"' )
        {
            ++start;
            end = _text.find( '"', start );
            if ( end == std::string_view::npos )
                fail( "unterminated sequence quote" );
            _pos = end + 1;
        }
        else
        {
            end = _text.find( '{', start );
            if ( end == std::string_view::npos )
                fail( "expected '{' after the sequence" );
            _pos = end;
        }
        try
        {
            return parse_sequence( _text.substr( start, end - start ) );
        }
        catch ( const ParseError& e )
        {
            throw e.shifted( start );
        }
    }
};

} // namespace

std::vector<AssertedSeq> read_asserted( std::string_view text, std::size_t& pos )
{
    AssertedReader reader{ text, pos };
    std::vector<AssertedSeq> out = reader.read();
    pos = reader.position();
    return out;
}

std::vector<AssertedSeq> parse_asserted_multi( std::string_view text )
{
    std::size_t pos = 0;
    std::vector<AssertedSeq> out = read_asserted( text, pos );
    while ( pos < text.size() && std::isspace( static_cast<unsigned char>( text[ pos ] ) ) )
        ++pos;
    if ( pos != text.size() )
        throw ParseError{ pos + 1, "trailing input after asserted sequence" };
    return out;
}

AssertedSeq parse_asserted( std::string_view text )
{
    std::vector<AssertedSeq> all = parse_asserted_multi( text );
    if ( all.size() != 1 )
        throw ParseError{ 1, "expected a single exit point" };
    return all.front();
}

} // namespace pga
