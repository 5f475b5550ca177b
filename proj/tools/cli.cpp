#include "cli.hpp"

#include "pga/asserted.hpp"
#include "pga/proof.hpp"
#include "pga/segment.hpp"
#include "pga/sequence.hpp"
#include "pga/thread.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

namespace pga {

namespace {

using nlohmann::json;

enum class Format
{
    text,
    structured
};

struct Options
{
    AlgebraConfig cfg;
    bool strict = false;
    Format format = Format::text;
};

constexpr int exit_ok = 0;
constexpr int exit_fails = 1;
constexpr int exit_unknown = 2;
constexpr int exit_usage = 3;

json family_json( const ServiceFamily& u )
{
    json out = json::object();
    for ( const auto& [ focus, service ] : u )
        out[ focus ] = to_string( service );
    return out;
}

json valuation_json( const Valuation& v )
{
    json out = json::object();
    for ( const auto& [ name, value ] : v )
        out[ name ] = to_string( value );
    return out;
}

json instructions_json( const std::vector<Instruction>& list )
{
    json out = json::array();
    for ( const auto& i : list )
        out.push_back( to_string( i ) );
    return out;
}

std::string join( const std::vector<Instruction>& list )
{
    std::string out;
    for ( const auto& i : list )
        out += ( out.empty() ? "" : " ; " ) + to_string( i );
    return out;
}

std::string outcome_tag( Outcome::Kind k )
{
    switch ( k )
    {
    case Outcome::Kind::halted:
        return "halted";
    case Outcome::Kind::exited:
        return "exited";
    case Outcome::Kind::inactive:
        return "inactive";
    case Outcome::Kind::budget_exhausted:
        return "budget_exhausted";
    }
    return "?";
}

json outcome_json( const Outcome& o )
{
    json out{ { "outcome", outcome_tag( o.kind ) } };
    if ( o.kind == Outcome::Kind::exited )
        out[ "offset" ] = o.offset;
    if ( o.kind == Outcome::Kind::exited || o.kind == Outcome::Kind::halted )
        out[ "state" ] = family_json( o.state );
    return out;
}

int normalize_cmd( const std::string& text, const Options& opt, std::ostream& out )
{
    CanonicalSequence seq = normalize( parse_sequence( text ) );
    if ( opt.format == Format::structured )
    {
        json j{ { "canonical", to_string( seq ) },
                { "prefix", instructions_json( seq.prefix() ) },
                { "period", instructions_json( seq.period() ) } };
        if ( seq.length() )
            j[ "length" ] = *seq.length();
        else
            j[ "length" ] = "omega";
        out << j.dump() << '\n';
        return exit_ok;
    }
    out << "canonical: " << to_string( seq ) << '\n';
    out << "prefix: " << join( seq.prefix() ) << '\n';
    out << "period: " << join( seq.period() ) << '\n';
    out << "len: " << to_string( seq.length() ) << '\n';
    return exit_ok;
}

int thread_cmd( const std::string& text, std::optional<std::uint64_t> entry, std::uint64_t exit, bool minimal,
                const Options& opt, std::ostream& out )
{
    SequenceTerm term = parse_sequence( text );
    RegularThread thread = extract( entry ? embed( term, *entry, exit ) : normalize( term ) );
    if ( minimal )
        thread = minimize( thread );
    if ( opt.format == Format::structured )
    {
        json nodes = json::array();
        for ( std::size_t i = 0; i < thread.size(); ++i )
        {
            const ThreadNode& n = thread.node( i );
            json node{ { "id", i } };
            switch ( n.kind )
            {
            case ThreadNode::Kind::stop:
                node[ "kind" ] = "stop";
                break;
            case ThreadNode::Kind::dead:
                node[ "kind" ] = "dead";
                break;
            case ThreadNode::Kind::branch:
                node[ "kind" ] = "branch";
                node[ "action" ] = n.focus + "." + n.method;
                node[ "on_true" ] = n.on_true;
                node[ "on_false" ] = n.on_false;
                break;
            }
            nodes.push_back( node );
        }
        out << json{ { "root", thread.root() }, { "nodes", nodes } }.dump() << '\n';
        return exit_ok;
    }
    out << dump( thread );
    return exit_ok;
}

int run_cmd( const std::string& text, std::uint64_t entry, const std::string& family, const Options& opt,
             std::ostream& out )
{
    SequenceTerm term = parse_sequence( text );
    ServiceFamily u = parse_family( family );
    Outcome o = run_segment( term, entry, u, opt.cfg.bound );
    if ( opt.format == Format::structured )
        out << outcome_json( o ).dump() << '\n';
    else
        out << to_string( o ) << '\n';
    return o.kind == Outcome::Kind::budget_exhausted ? exit_unknown : exit_ok;
}

json verdict_json( const AssertedSeq& phi, const Verdict& v )
{
    static const char* const tags[] = { "holds", "fails", "unknown" };
    json j{ { "assertion", to_string( phi ) }, { "verdict", tags[ static_cast<int>( v.kind ) ] } };
    if ( v.kind == Verdict::Kind::holds )
    {
        j[ "bounded" ] = v.bounded;
        if ( v.bounded )
            j[ "bound" ] = v.bound;
    }
    if ( v.kind != Verdict::Kind::holds )
        j[ "reason" ] = v.reason;
    if ( v.witness_state )
    {
        json w{ { "state", family_json( *v.witness_state ) }, { "valuation", valuation_json( v.witness_valuation ) } };
        if ( v.witness_outcome )
            w[ "outcome" ] = outcome_json( *v.witness_outcome );
        j[ "witness" ] = w;
    }
    return j;
}

int holds_cmd( const std::string& text, const Options& opt, std::ostream& out )
{
    std::vector<AssertedSeq> all = parse_asserted_multi( text );
    bool any_fails = false, any_unknown = false;
    json results = json::array();
    for ( const AssertedSeq& phi : all )
    {
        Verdict v = holds( phi, opt.cfg );
        any_fails = any_fails || v.kind == Verdict::Kind::fails;
        any_unknown = any_unknown || v.kind == Verdict::Kind::unknown;
        if ( opt.format == Format::structured )
            results.push_back( verdict_json( phi, v ) );
        else if ( all.size() > 1 )
            out << "exit " << phi.exit << ": " << to_string( v ) << '\n';
        else
            out << to_string( v ) << '\n';
    }
    if ( opt.format == Format::structured )
        out << ( all.size() == 1 ? results.front() : json{ { "results", results } } ).dump() << '\n';
    return any_fails ? exit_fails : any_unknown ? exit_unknown : exit_ok;
}

int sp_cmd( const std::string& pre, const std::string& seq, std::uint64_t entry, std::uint64_t exit,
            const Options& opt, std::ostream& out, std::ostream& err )
{
    Formula p = parse_formula( pre );
    SequenceTerm s = parse_sequence( seq );
    PostImage image;
    try
    {
        image = strongest_post( p, s, entry, exit, opt.cfg );
    }
    catch ( const std::domain_error& e )
    {
        err << "pga: " << e.what() << '\n';
        return exit_fails;
    }
    if ( opt.format == Format::structured )
    {
        json states = json::array();
        for ( const auto& u : image.states )
            states.push_back( family_json( u ) );
        json j{ { "states", states }, { "formula", to_string( image.formula ) }, { "bounded", image.bounded } };
        if ( image.bounded )
            j[ "bound" ] = opt.cfg.bound;
        out << j.dump() << '\n';
        return exit_ok;
    }
    out << "states: " << image.states.size();
    if ( image.bounded )
        out << " (bounded, B=" << opt.cfg.bound << ")";
    out << '\n';
    for ( const auto& u : image.states )
        out << "  " << to_string( u ) << '\n';
    out << "formula: " << to_string( image.formula ) << '\n';
    return exit_ok;
}

std::string read_file( const std::string& path )
{
    std::ifstream in{ path };
    if ( !in )
        throw std::runtime_error{ "cannot read '" + path + "'" };
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int check_cmd( const std::string& path, const Options& opt, std::ostream& out )
{
    ProofPtr proof = parse_proof( read_file( path ) );
    CheckResult r = check_proof( *proof, opt.cfg, opt.strict );
    if ( opt.format == Format::structured )
    {
        json failures = json::array();
        for ( const auto& f : r.failures )
            failures.push_back( { { "path", f.path }, { "reason", f.reason } } );
        json j{ { "accepted", r.accepted }, { "failures", failures }, { "assumptions", r.assumptions } };
        if ( r.conclusion )
            j[ "conclusion" ] = to_string( *r.conclusion );
        out << j.dump() << '\n';
        return r.accepted ? exit_ok : exit_fails;
    }
    if ( r.accepted )
    {
        std::size_t n = r.assumptions.size();
        out << "ACCEPTED, " << n << " bounded entailment assumption" << ( n == 1 ? "" : "s" ) << '\n';
        out << "conclusion: " << to_string( *r.conclusion ) << '\n';
        for ( const auto& a : r.assumptions )
            out << "  assumed: " << a << '\n';
        return exit_ok;
    }
    out << "REJECTED, " << r.failures.size() << " failure" << ( r.failures.size() == 1 ? "" : "s" ) << '\n';
    for ( const auto& f : r.failures )
        out << "  " << f.path << ": " << f.reason << '\n';
    return exit_fails;
}

} // namespace

int run_cli( const std::vector<std::string>& args, std::ostream& out, std::ostream& err )
{
    CLI::App app{ "Instruction sequences of program algebra and their Hoare-like logic", "pga" };
    app.require_subcommand( 1 );

    Options opt;
    std::string algebra = "counter";
    std::string format = "text";
    app.add_option( "--algebra", algebra, "Service algebra for enumeration" )
            ->check( CLI::IsMember( { "counter", "boolreg" } ) );
    app.add_option( "--bound", opt.cfg.bound, "Largest counter content enumerated" )->check( CLI::PositiveNumber );
    app.add_option( "--qbound", opt.cfg.qbound, "Quantifier headroom above the active domain" )
            ->check( CLI::PositiveNumber );
    app.add_flag( "--strict", opt.strict, "Reject entailments that only hold up to the bound" );
    app.add_option( "--format", format, "Output format" )->check( CLI::IsMember( { "text", "structured" } ) );

    std::string seq_text, asserted_text, family_text, pre_text, path;
    std::uint64_t entry = 1, exit = 0;
    std::optional<std::uint64_t> embed_entry;
    bool minimal = false;

    auto* normalize_app = app.add_subcommand( "normalize", "Print the canonical form and length of a sequence" );
    normalize_app->add_option( "sequence", seq_text )->required();

    auto* thread_app = app.add_subcommand( "thread", "Print the thread a sequence produces" );
    thread_app->add_option( "sequence", seq_text )->required();
    thread_app->add_option( "--entry", embed_entry, "Embed as a segment entered here" );
    thread_app->add_option( "--exit", exit, "Exit observed when embedding" );
    thread_app->add_flag( "--minimize", minimal, "Print the bisimulation quotient" );

    auto* run_app = app.add_subcommand( "run", "Execute a segment from an entry point on a family" );
    run_app->add_option( "sequence", seq_text )->required();
    run_app->add_option( "entry", entry )->required()->check( CLI::PositiveNumber );
    run_app->add_option( "family", family_text )->required();

    auto* holds_app = app.add_subcommand( "holds", "Check an asserted sequence semantically" );
    holds_app->add_option( "assertion", asserted_text )->required();

    auto* sp_app = app.add_subcommand( "sp", "Strongest postcondition of a segment" );
    sp_app->add_option( "pre", pre_text )->required();
    sp_app->add_option( "sequence", seq_text )->required();
    sp_app->add_option( "entry", entry )->required()->check( CLI::PositiveNumber );
    sp_app->add_option( "exit", exit )->required();

    auto* check_app = app.add_subcommand( "check", "Check a proof file" );
    check_app->add_option( "proof", path )->required();

    for ( auto* sub : { normalize_app, thread_app, run_app, holds_app, sp_app, check_app } )
        sub->fallthrough();

    // No short options exist besides -h, so "-c.iszero ; ..." is a sequence, not a flag.
    std::vector<std::string> reversed;
    for ( auto it = args.rbegin(); it != args.rend(); ++it )
        reversed.push_back( it->size() > 1 && ( *it )[ 0 ] == '-' && ( *it )[ 1 ] != '-' && *it != "-h" ? " " + *it
                                                                                                        : *it );
    try
    {
        app.parse( reversed );
    }
    catch ( const CLI::CallForHelp& e )
    {
        return app.exit( e, out, err );
    }
    catch ( const CLI::ParseError& e )
    {
        app.exit( e, out, err );
        return exit_usage;
    }

    opt.cfg.algebra = parse_algebra_id( algebra );
    opt.format = format == "structured" ? Format::structured : Format::text;

    try
    {
        if ( *normalize_app )
            return normalize_cmd( seq_text, opt, out );
        if ( *thread_app )
            return thread_cmd( seq_text, embed_entry, exit, minimal, opt, out );
        if ( *run_app )
            return run_cmd( seq_text, entry, family_text, opt, out );
        if ( *holds_app )
            return holds_cmd( asserted_text, opt, out );
        if ( *sp_app )
            return sp_cmd( pre_text, seq_text, entry, exit, opt, out, err );
        if ( *check_app )
            return check_cmd( path, opt, out );
    }
    catch ( const ParseError& e )
    {
        err << "pga: parse error at " << e.what() << '\n';
        return exit_usage;
    }
    catch ( const std::exception& e )
    {
        err << "pga: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}

} // namespace pga
