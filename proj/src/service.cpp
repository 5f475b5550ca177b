#include "pga/service.hpp"

#include "pga/sequence.hpp"

#include <cctype>
#include <stdexcept>

namespace pga {

std::string to_string( Reply r )
{
    switch ( r )
    {
    case Reply::t:
        return "T";
    case Reply::f:
        return "F";
    case Reply::d:
        return "D";
    }
    return "?";
}

std::string to_string( const Service& s )
{
    switch ( s.kind )
    {
    case Service::Kind::empty:
        return "empty";
    case Service::Kind::counter:
        return "counter(" + std::to_string( s.content ) + ")";
    case Service::Kind::boolreg:
        return s.content ? "bool(true)" : "bool(false)";
    }
    return "?";
}

StepResult svc_step( const Service& s, std::string_view method )
{
    constexpr StepResult unable{ Reply::d, Service{} };
    switch ( s.kind )
    {
    case Service::Kind::empty:
        return unable;
    case Service::Kind::counter:
        if ( method == "incr" )
            return { Reply::t, Service::counter( s.content + 1 ) };
        if ( method == "decr" )
        {
            if ( s.content == 0 )
                return { Reply::f, s };
            return { Reply::t, Service::counter( s.content - 1 ) };
        }
        if ( method == "iszero" )
            return { s.content == 0 ? Reply::t : Reply::f, s };
        return unable;
    case Service::Kind::boolreg:
        if ( method == "set:t" )
            return { Reply::t, Service::boolreg( true ) };
        if ( method == "set:f" )
            return { Reply::t, Service::boolreg( false ) };
        if ( method == "get" )
            return { s.content ? Reply::t : Reply::f, s };
        return unable;
    }
    return unable;
}

ServiceFamily fam_compose( const ServiceFamily& u, const ServiceFamily& v )
{
    ServiceFamily out = u;
    for ( const auto& [ focus, service ] : v )
    {
        auto [ it, inserted ] = out.emplace( focus, service );
        if ( !inserted )
            it->second = Service::empty();
    }
    return out;
}

ServiceFamily fam_encapsulate( const std::set<std::string>& foci, const ServiceFamily& u )
{
    ServiceFamily out;
    for ( const auto& entry : u )
        if ( !foci.contains( entry.first ) )
            out.insert( entry );
    return out;
}

namespace {

class FamilyParser
{
public:
    explicit FamilyParser( std::string_view text ) : _text{ text } {}

    ServiceFamily parse()
    {
        expect( '{' );
        ServiceFamily family;
        skip_ws();
        if ( peek() != '}' )
        {
            do
            {
                std::string focus = ident();
                expect( '=' );
                Service service = parse_service();
                family = fam_compose( family, ServiceFamily{ { focus, service } } );
            } while ( accept( ',' ) );
        }
        expect( '}' );
        skip_ws();
        if ( _pos < _text.size() )
            fail( "trailing input after family literal" );
        return family;
    }

private:
    std::string_view _text;
    std::size_t _pos = 0;

    [[noreturn]] void fail( const std::string& msg ) const { throw ParseError{ _pos + 1, msg }; }

    char peek() const { return _pos < _text.size() ? _text[ _pos ] : '\0'; }

    void skip_ws()
    {
        while ( _pos < _text.size() && std::isspace( static_cast<unsigned char>( _text[ _pos ] ) ) )
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

    void expect( char c )
    {
        if ( !accept( c ) )
            fail( std::string{ "expected '" } + c + "'" );
    }

    std::string ident()
    {
        skip_ws();
        std::size_t start = _pos;
        if ( !( std::isalpha( static_cast<unsigned char>( peek() ) ) || peek() == '_' ) )
            fail( "expected identifier" );
        while ( std::isalnum( static_cast<unsigned char>( peek() ) ) || peek() == '_' )
            ++_pos;
        return std::string{ _text.substr( start, _pos - start ) };
    }

    Service parse_service()
    {
        std::string head = ident();
        if ( head == "empty" )
            return Service::empty();
        if ( head == "counter" )
        {
            expect( '(' );
            skip_ws();
            if ( !std::isdigit( static_cast<unsigned char>( peek() ) ) )
                fail( "expected counter content" );
            std::uint64_t n = 0;
            while ( std::isdigit( static_cast<unsigned char>( peek() ) ) )
                n = n * 10 + static_cast<std::uint64_t>( _text[ _pos++ ] - '0' );
            expect( ')' );
            return Service::counter( n );
        }
        if ( head == "bool" )
        {
            expect( '(' );
            std::string value = ident();
            if ( value != "true" && value != "false" )
                fail( "expected true or false" );
            expect( ')' );
            return Service::boolreg( value == "true" );
        }
        fail( "unknown service '" + head + "'" );
    }
};

} // namespace

ServiceFamily parse_family( std::string_view text )
{
    return FamilyParser{ text }.parse();
}

std::string to_string( const ServiceFamily& u )
{
    std::string out = "{";
    bool first = true;
    for ( const auto& [ focus, service ] : u )
    {
        if ( !first )
            out += ", ";
        first = false;
        out += focus + " = " + to_string( service );
    }
    return out + "}";
}

std::string to_string( AlgebraId id )
{
    return id == AlgebraId::counter ? "counter" : "boolreg";
}

AlgebraId parse_algebra_id( std::string_view text )
{
    if ( text == "counter" )
        return AlgebraId::counter;
    if ( text == "boolreg" )
        return AlgebraId::boolreg;
    throw std::invalid_argument{ "unknown algebra '" + std::string{ text } + "'" };
}

void AlgebraConfig::validate() const
{
    if ( bound < 1 )
        throw std::invalid_argument{ "enumeration bound must be at least 1" };
    if ( qbound < 1 )
        throw std::invalid_argument{ "quantifier bound must be at least 1" };
}

namespace {

class CounterAlgebra final : public ServiceAlgebra
{
public:
    AlgebraId id() const override { return AlgebraId::counter; }

    std::vector<Service> carrier( std::uint64_t bound ) const override
    {
        std::vector<Service> out{ Service::empty() };
        for ( std::uint64_t n = 0; n <= bound; ++n )
            out.push_back( Service::counter( n ) );
        return out;
    }

    bool finite_carrier() const override { return false; }
};

class BoolRegAlgebra final : public ServiceAlgebra
{
public:
    AlgebraId id() const override { return AlgebraId::boolreg; }

    std::vector<Service> carrier( std::uint64_t ) const override
    {
        return { Service::empty(), Service::boolreg( false ), Service::boolreg( true ) };
    }

    bool finite_carrier() const override { return true; }
};

} // namespace

const ServiceAlgebra& algebra_for( AlgebraId id )
{
    static const CounterAlgebra counter;
    static const BoolRegAlgebra boolreg;
    if ( id == AlgebraId::counter )
        return counter;
    return boolreg;
}

void for_each_state( const std::set<std::string>& foci, const ServiceAlgebra& alg, std::uint64_t bound,
                     const std::function<bool( const ServiceFamily& )>& fn )
{
    const std::vector<Service> values = alg.carrier( bound );
    const std::vector<std::string> names( foci.begin(), foci.end() );
    std::vector<std::size_t> index( names.size(), 0 );
    ServiceFamily state;
    for ( const auto& name : names )
        state[ name ] = values.front();

    // Odometer over the carrier, one digit per focus.
    while ( true )
    {
        if ( !fn( state ) )
            return;
        std::size_t i = 0;
        while ( i < names.size() )
        {
            if ( ++index[ i ] < values.size() )
            {
                state[ names[ i ] ] = values[ index[ i ] ];
                break;
            }
            index[ i ] = 0;
            state[ names[ i ] ] = values.front();
            ++i;
        }
        if ( i == names.size() )
            return;
    }
}

std::vector<ServiceFamily> enumerate_states( const std::set<std::string>& foci, const ServiceAlgebra& alg,
                                             std::uint64_t bound )
{
    std::vector<ServiceFamily> out;
    for_each_state( foci, alg, bound, [ & ]( const ServiceFamily& u ) {
        out.push_back( u );
        return true;
    } );
    return out;
}

} // namespace pga
