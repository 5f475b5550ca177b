#include "pga/proof.hpp"

#include <array>
#include <cctype>

namespace pga {

namespace {

constexpr std::array<std::pair<RuleId, std::string_view>, 23> rule_names{ {
        { RuleId::a1, "A1" },   { RuleId::a2, "A2" },   { RuleId::a3, "A3" },   { RuleId::a4, "A4" },
        { RuleId::a5, "A5" },   { RuleId::a6, "A6" },   { RuleId::a7, "A7" },   { RuleId::a8, "A8" },
        { RuleId::a9, "A9" },   { RuleId::a10, "A10" }, { RuleId::a11, "A11" }, { RuleId::r1, "R1" },
        { RuleId::r2, "R2" },   { RuleId::r3, "R3" },   { RuleId::r4, "R4" },   { RuleId::r5, "R5" },
        { RuleId::r6, "R6" },   { RuleId::r7, "R7" },   { RuleId::r8, "R8" },   { RuleId::r9, "R9" },
        { RuleId::r10, "R10" }, { RuleId::hyp, "HYP" }, { RuleId::rep_intro, "REP" },
} };

} // namespace

std::string to_string( RuleId id )
{
    for ( const auto& [ rule, name ] : rule_names )
        if ( rule == id )
            return std::string{ name };
    return "?";
}

std::optional<RuleId> parse_rule_id( std::string_view text )
{
    for ( const auto& [ rule, name ] : rule_names )
        if ( name == text )
            return rule;
    return std::nullopt;
}

bool is_axiom( RuleId id )
{
    return id <= RuleId::a11;
}

namespace {

class ProofReader
{
public:
    explicit ProofReader( std::string_view text ) : _text{ text } {}

    ProofPtr parse()
    {
        skip();
        if ( at_end() )
            fail( "empty proof" );
        ProofPtr root = node();
        skip();
        if ( !at_end() )
            fail( "trailing input after proof" );
        return root;
    }

private:
    std::string_view _text;
    std::size_t _pos = 0;

    [[noreturn]] void fail( const std::string& msg ) const { throw ParseError{ _pos + 1, msg }; }

    bool at_end() const { return _pos >= _text.size(); }
    char peek() const { return at_end() ? '\0' : _text[ _pos ]; }

    std::size_t line() const
    {
        std::size_t n = 1;
        for ( std::size_t i = 0; i < _pos && i < _text.size(); ++i )
            n += _text[ i ] == '\n';
        return n;
    }

    // Whitespace and `;` comments.
    void skip()
    {
        while ( !at_end() )
        {
            if ( std::isspace( static_cast<unsigned char>( peek() ) ) )
                ++_pos;
            else if ( peek() == ';' )
                while ( !at_end() && peek() != '\n' )
                    ++_pos;
            else
                break;
        }
    }

    bool accept( std::string_view token )
    {
        skip();
        if ( _text.substr( _pos, token.size() ) == token )
        {
            _pos += token.size();
            return true;
        }
        return false;
    }

    void expect( std::string_view token )
    {
        if ( !accept( token ) )
            fail( "expected '" + std::string{ token } + "'" );
    }

    std::string word()
    {
        skip();
        std::size_t start = _pos;
        while ( !at_end() && ( std::isalnum( static_cast<unsigned char>( peek() ) ) || peek() == '_' ) )
            ++_pos;
        if ( start == _pos )
            fail( "expected a word" );
        return std::string{ _text.substr( start, _pos - start ) };
    }

    std::uint64_t number()
    {
        skip();
        if ( !std::isdigit( static_cast<unsigned char>( peek() ) ) )
            fail( "expected a natural number" );
        std::uint64_t n = 0;
        while ( std::isdigit( static_cast<unsigned char>( peek() ) ) )
            n = n * 10 + static_cast<std::uint64_t>( _text[ _pos++ ] - '0' );
        return n;
    }

    AssertedSeq asserted()
    {
        skip();
        std::size_t start = _pos;
        std::vector<AssertedSeq> all = read_asserted( _text, _pos );
        if ( all.size() != 1 )
        {
            _pos = start;
            fail( "proof steps take a single exit point" );
        }
        return all.front();
    }

    std::pair<Formula, Formula> implication()
    {
        expect( "\"" );
        std::size_t start = _pos;
        std::size_t end = _text.find( '"', start );
        if ( end == std::string_view::npos )
            fail( "unterminated obligation quote" );
        Formula f;
        try
        {
            f = parse_formula( _text.substr( start, end - start ) );
        }
        catch ( const ParseError& e )
        {
            throw e.shifted( start );
        }
        if ( f->kind != FormulaKind::impl )
            fail( "obligation must have the form \"P -> Q\"" );
        _pos = end + 1;
        return { f->sub[ 0 ], f->sub[ 1 ] };
    }

    void conclusion( ProofNode& n )
    {
        if ( accept( "=>" ) )
            n.conclusion = asserted();
    }

    ProofPtr node()
    {
        expect( "(" );
        auto n = std::make_shared<ProofNode>();
        n->line = line();
        std::string name = word();
        std::optional<RuleId> id = parse_rule_id( name );
        if ( !id )
            fail( "unknown rule '" + name + "'" );
        n->rule = *id;

        if ( is_axiom( n->rule ) )
            n->conclusion = asserted();
        else if ( n->rule == RuleId::hyp )
            n->hyp_index = number();
        else if ( n->rule == RuleId::r5 )
            repetition( *n );
        else
        {
            if ( n->rule == RuleId::r9 )
            {
                expect( "[" );
                n->rename_to = word();
                expect( "/" );
                n->rename_from = word();
                expect( "]" );
            }
            skip();
            if ( n->rule == RuleId::r10 && peek() == '"' )
                n->strengthen = implication();
            while ( accept( "(" ) )
            {
                --_pos;
                n->premises.push_back( node() );
            }
            skip();
            if ( n->rule == RuleId::r10 && peek() == '"' )
                n->weaken = implication();
            conclusion( *n );
        }
        expect( ")" );
        return n;
    }

    void repetition( ProofNode& n )
    {
        if ( word() != "hyps" )
            fail( "expected 'hyps'" );
        expect( "[" );
        while ( !accept( "]" ) )
        {
            if ( at_end() )
                fail( "unterminated hypothesis list" );
            n.hyps.push_back( asserted() );
        }
        if ( word() != "k" )
            fail( "expected 'k'" );
        n.k = number();
        if ( word() != "subproofs" )
            fail( "expected 'subproofs'" );
        expect( "[" );
        while ( !accept( "]" ) )
        {
            if ( at_end() )
                fail( "unterminated subproof list" );
            n.subproofs.push_back( node() );
        }
        conclusion( n );
    }
};

void print( const ProofNode& n, std::size_t indent, std::string& out )
{
    const std::string pad( indent, ' ' );
    out += pad + "(" + to_string( n.rule );
    if ( is_axiom( n.rule ) )
    {
        out += " " + to_string( *n.conclusion ) + ")";
        return;
    }
    if ( n.rule == RuleId::hyp )
    {
        out += " " + std::to_string( n.hyp_index ) + ")";
        return;
    }
    if ( n.rule == RuleId::r5 )
    {
        out += " hyps [";
        for ( const auto& h : n.hyps )
            out += "\n" + pad + "    " + to_string( h );
        out += "]\n" + pad + "  k " + std::to_string( n.k ) + " subproofs [";
        for ( const auto& s : n.subproofs )
        {
            out += "\n";
            print( *s, indent + 4, out );
        }
        out += "]";
    }
    if ( n.rule == RuleId::r9 )
        out += " [" + n.rename_to + "/" + n.rename_from + "]";
    if ( n.strengthen )
        out += " \"" + to_string( formulas::impl( n.strengthen->first, n.strengthen->second ) ) + "\"";
    for ( const auto& p : n.premises )
    {
        out += "\n";
        print( *p, indent + 2, out );
    }
    if ( n.weaken )
        out += "\n" + pad + "  \"" + to_string( formulas::impl( n.weaken->first, n.weaken->second ) ) + "\"";
    if ( n.conclusion )
        out += "\n" + pad + "  => " + to_string( *n.conclusion );
    out += ")";
}

} // namespace

ProofPtr parse_proof( std::string_view text )
{
    return ProofReader{ text }.parse();
}

std::string to_string( const ProofNode& node )
{
    std::string out;
    print( node, 0, out );
    return out;
}

} // namespace pga
