#include "cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <fstream>
#include <sstream>

using namespace pga;
using json = nlohmann::json;

namespace {

struct Run
{
    int status;
    std::string out;
    std::string err;
};

Run pga_cli( std::vector<std::string> args )
{
    std::ostringstream out, err;
    int status = run_cli( args, out, err );
    return { status, out.str(), err.str() };
}

std::string source_path( const std::string& relative )
{
    return std::string{ PGA_SOURCE_DIR } + "/" + relative;
}

std::string golden( const std::string& name )
{
    std::ifstream in{ source_path( "tests/golden/" + name ) };
    REQUIRE( in );
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const std::string golden_proof = source_path( "proofs/counter_zero.proof" );

} // namespace

TEST_CASE( "cli: normalize" )
{
    Run r = pga_cli( { "normalize", "(!)^w ; c.incr" } );
    CHECK( r.status == 0 );
    CHECK( r.out.find( "period: !\n" ) != std::string::npos );
    CHECK( r.out.find( "len: omega\n" ) != std::string::npos );
    CHECK( pga_cli( { "normalize", "c.incr ; (c.decr ; c.incr)^w" } ).out == golden( "normalize.txt" ) );
}

TEST_CASE( "cli: holds on the counter loop" )
{
    Run r = pga_cli( { "holds", "--algebra", "counter", "--bound", "100",
                       "{1 | true} (-c.iszero;#2;!;c.decr)^w {0 | c = nnc(0)}" } );
    CHECK( r.status == 0 );
    CHECK( r.out == "HOLDS (bounded, B=100)\n" );
}

TEST_CASE( "cli: check the golden proof" )
{
    Run r = pga_cli( { "check", golden_proof } );
    CHECK( r.status == 0 );
    CHECK( r.out.rfind( "ACCEPTED, 6 bounded entailment assumptions\n", 0 ) == 0 );
    CHECK( r.out.find( "conclusion: {1 | true} \"(-c.iszero ; #2 ; ! ; c.decr)^w\" {0 | c = nnc(0)}" ) !=
           std::string::npos );

    Run strict = pga_cli( { "check", "--strict", golden_proof } );
    CHECK( strict.status == 1 );
    CHECK( strict.out.rfind( "REJECTED", 0 ) == 0 );
}

TEST_CASE( "cli: exit statuses" )
{
    CHECK( pga_cli( { "holds", "--algebra", "boolreg", "{1 | true} ! {1 | true}" } ).status == 1 );
    CHECK( pga_cli( { "holds", "--bound", "5", "{1 | c = nnc(0)} (c.incr)^w {0 | true}" } ).status == 2 );
    CHECK( pga_cli( { "run", "(c.incr)^w", "1", "{c = counter(0)}", "--bound", "3" } ).status == 2 );
    CHECK( pga_cli( { "normalize", "#-1 ; !" } ).status == 3 );
    CHECK( pga_cli( { "frobnicate" } ).status == 3 );
    CHECK( pga_cli( {} ).status == 3 );
    CHECK( pga_cli( { "holds", "--bound", "0", "{1 | true} ! {0 | true}" } ).status == 3 );
    CHECK( pga_cli( { "check", source_path( "no/such/file.proof" ) } ).status == 3 );
    CHECK( pga_cli( { "sp", "true", "!", "1", "1", "--algebra", "boolreg" } ).status == 1 );
}

TEST_CASE( "cli: parse errors report a column" )
{
    Run r = pga_cli( { "normalize", "! ; #x" } );
    CHECK( r.status == 3 );
    CHECK( r.err.find( "parse error" ) != std::string::npos );
    CHECK( r.err.find( "6" ) != std::string::npos );
}

TEST_CASE( "cli: run" )
{
    Run r = pga_cli( { "run", "-c.iszero ; #2 ; ! ; c.decr", "1", "{c = counter(5)}" } );
    CHECK( r.status == 0 );
    CHECK( r.out == "exited 1 {c = counter(4)}\n" );
}

TEST_CASE( "cli: thread" )
{
    CHECK( pga_cli( { "thread", "+c.iszero ; ! ; #0" } ).out == "n0: branch c.iszero -> n1 / n2\nn1: stop\nn2: dead\n" );
    CHECK( pga_cli( { "thread", "(-c.iszero ; #2 ; ! ; c.decr)^w", "--entry", "1", "--minimize" } ).out ==
           golden( "thread_loop.txt" ) );
}

TEST_CASE( "cli: multi-exit holds" )
{
    Run r = pga_cli( { "holds", "--algebra", "boolreg", "{1 | true} +r.get {1, 2 | true}" } );
    CHECK( r.status == 1 );
    CHECK( r.out.find( "exit 1: FAILS" ) != std::string::npos );
    CHECK( r.out.find( "exit 2: FAILS" ) != std::string::npos );
    Run ok = pga_cli( { "holds", "--algebra", "boolreg", "{1 | r = reg(true)} +r.get {1 | true}" } );
    CHECK( ok.status == 0 );
}

TEST_CASE( "cli: strongest post" )
{
    Run r = pga_cli( { "sp", "c = nnc(2)", "-c.iszero ; #2 ; ! ; c.decr", "1", "1" } );
    CHECK( r.status == 0 );
    CHECK( r.out == golden( "sp.txt" ) );
}

TEST_CASE( "cli: structured output" )
{
    json n = json::parse( pga_cli( { "--format", "structured", "normalize", "(!)^w ; c.incr" } ).out );
    CHECK( n.at( "length" ) == "omega" );
    CHECK( n.at( "period" ).size() == 1 );
    CHECK( n.contains( "canonical" ) );
    CHECK( n.contains( "prefix" ) );

    json h = json::parse( pga_cli( { "holds", "--format", "structured", "--algebra", "boolreg",
                                     "{1 | true} r.set:t {1 | r = reg(false)}" } )
                                  .out );
    CHECK( h.at( "verdict" ) == "fails" );
    CHECK( h.at( "witness" ).contains( "state" ) );
    CHECK( h.at( "witness" ).contains( "outcome" ) );

    Run c = pga_cli( { "check", "--format", "structured", golden_proof } );
    CHECK( c.status == 0 );
    json cj = json::parse( c.out );
    CHECK( cj.at( "accepted" ) == true );
    CHECK( cj.at( "assumptions" ).size() == 6 );
    CHECK( cj.at( "failures" ).empty() );

    CHECK( pga_cli( { "--format", "structured", "run", "-c.iszero ; #2 ; ! ; c.decr", "1", "{c = counter(5)}" } ).out ==
           golden( "run.json" ) );
    CHECK( pga_cli( { "--format", "structured", "thread", "+c.iszero ; ! ; #0" } ).out == golden( "thread.json" ) );
    CHECK( pga_cli( { "--format", "structured", "sp", "true", "r.set:t", "1", "1", "--algebra", "boolreg" } ).out ==
           golden( "sp.json" ) );
}
