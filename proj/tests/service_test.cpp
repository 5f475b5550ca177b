#include "pga/service.hpp"

#include "printing.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace pga;

TEST_CASE( "counter methods" )
{
    auto [ r0, s0 ] = svc_step( Service::counter( 0 ), "iszero" );
    CHECK( r0 == Reply::t );
    CHECK( s0 == Service::counter( 0 ) );

    auto [ r1, s1 ] = svc_step( Service::counter( 3 ), "incr" );
    CHECK( r1 == Reply::t );
    CHECK( s1 == Service::counter( 4 ) );

    auto [ r2, s2 ] = svc_step( Service::counter( 0 ), "decr" );
    CHECK( r2 == Reply::f );
    CHECK( s2 == Service::counter( 0 ) );

    auto [ r3, s3 ] = svc_step( Service::counter( 5 ), "decr" );
    CHECK( r3 == Reply::t );
    CHECK( s3 == Service::counter( 4 ) );

    CHECK( svc_step( Service::counter( 5 ), "iszero" ).reply == Reply::f );
}

TEST_CASE( "register methods" )
{
    CHECK( svc_step( Service::boolreg( false ), "set:t" ).next == Service::boolreg( true ) );
    CHECK( svc_step( Service::boolreg( true ), "set:f" ).next == Service::boolreg( false ) );
    CHECK( svc_step( Service::boolreg( true ), "get" ).reply == Reply::t );
    CHECK( svc_step( Service::boolreg( false ), "get" ).reply == Reply::f );
}

TEST_CASE( "empty service and unknown methods" )
{
    for ( std::string_view m : { "incr", "get", "anything" } )
    {
        StepResult r = svc_step( Service::empty(), m );
        CHECK( r.reply == Reply::d );
        CHECK( r.next == Service::empty() );
    }
    CHECK( svc_step( Service::counter( 2 ), "get" ).reply == Reply::d );
    CHECK( svc_step( Service::boolreg( true ), "incr" ).next == Service::empty() );
}

TEST_CASE( "composition" )
{
    ServiceFamily c1{ { "c", Service::counter( 1 ) } };
    ServiceFamily c2{ { "c", Service::counter( 2 ) } };
    CHECK( fam_compose( c1, c2 ) == ServiceFamily{ { "c", Service::empty() } } );
    CHECK( fam_compose( c1, {} ) == c1 );
    ServiceFamily d{ { "d", Service::boolreg( true ) } };
    CHECK( fam_compose( c1, d ) == ServiceFamily{ { "c", Service::counter( 1 ) }, { "d", Service::boolreg( true ) } } );
}

TEST_CASE( "encapsulation" )
{
    ServiceFamily u{ { "c", Service::counter( 1 ) }, { "d", Service::boolreg( true ) } };
    CHECK( fam_encapsulate( { "c" }, u ) == ServiceFamily{ { "d", Service::boolreg( true ) } } );
    CHECK( fam_encapsulate( {}, u ) == u );
    CHECK( fam_encapsulate( { "c" }, {} ).empty() );
}

TEST_CASE( "family literals" )
{
    ServiceFamily u = parse_family( "{c = counter(3), r = bool(true), d = empty}" );
    CHECK( u.at( "c" ) == Service::counter( 3 ) );
    CHECK( u.at( "r" ) == Service::boolreg( true ) );
    CHECK( u.at( "d" ) == Service::empty() );
    CHECK( parse_family( to_string( u ) ) == u );
    CHECK( parse_family( "{}" ).empty() );
    CHECK( parse_family( "{c = counter(1), c = counter(1)}" ).at( "c" ) == Service::empty() );
    CHECK_THROWS( parse_family( "{c = counter(x)}" ) );
    CHECK_THROWS( parse_family( "c = counter(1)" ) );
}

TEST_CASE( "algebra configuration" )
{
    CHECK( parse_algebra_id( "counter" ) == AlgebraId::counter );
    CHECK( parse_algebra_id( "boolreg" ) == AlgebraId::boolreg );
    CHECK_THROWS( parse_algebra_id( "stack" ) );
    AlgebraConfig cfg;
    cfg.bound = 0;
    CHECK_THROWS_AS( cfg.validate(), std::invalid_argument );
}

TEST_CASE( "carriers include the empty service" )
{
    auto counters = algebra_for( AlgebraId::counter ).carrier( 3 );
    CHECK( counters.size() == 5 );
    CHECK( counters.front() == Service::empty() );
    auto regs = algebra_for( AlgebraId::boolreg ).carrier( 3 );
    CHECK( regs.size() == 3 );
    CHECK( enumerate_states( { "r", "q" }, algebra_for( AlgebraId::boolreg ), 3 ).size() == 9 );
    CHECK( enumerate_states( {}, algebra_for( AlgebraId::boolreg ), 3 ).size() == 1 );
}

TEST_CASE( "property: family algebra laws" )
{
    std::vector<ServiceFamily> fams{
            {},
            { { "c", Service::counter( 1 ) } },
            { { "c", Service::counter( 2 ) }, { "d", Service::boolreg( false ) } },
            { { "d", Service::empty() } },
            { { "e", Service::boolreg( true ) } },
    };
    std::vector<std::set<std::string>> filters{ {}, { "c" }, { "d", "e" } };
    for ( const auto& u : fams )
        for ( const auto& v : fams )
        {
            CHECK( fam_compose( u, v ) == fam_compose( v, u ) );
            for ( const auto& w : fams )
                CHECK( fam_compose( fam_compose( u, v ), w ) == fam_compose( u, fam_compose( v, w ) ) );
            for ( const auto& f : filters )
                CHECK( fam_encapsulate( f, fam_compose( u, v ) ) ==
                       fam_compose( fam_encapsulate( f, u ), fam_encapsulate( f, v ) ) );
        }
}

TEST_CASE( "property: derive is empty exactly when the reply is D" )
{
    const std::vector<std::string> methods{ "incr", "decr", "iszero", "get", "set:t", "set:f", "other" };
    for ( const auto& m : methods )
    {
        for ( const auto& s : algebra_for( AlgebraId::boolreg ).carrier( 1 ) )
        {
            StepResult r = svc_step( s, m );
            CHECK( ( r.next == Service::empty() ) == ( r.reply == Reply::d ) );
        }
        for ( const auto& s : algebra_for( AlgebraId::counter ).carrier( 100 ) )
        {
            StepResult r = svc_step( s, m );
            CHECK( ( r.next == Service::empty() ) == ( r.reply == Reply::d ) );
        }
    }
}
