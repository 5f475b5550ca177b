#include "pga/formula.hpp"

#include "pga/sequence.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>

namespace pga {

std::string to_string( Sort s )
{
    switch ( s )
    {
    case Sort::nat:
        return "nat";
    case Sort::boolean:
        return "bool";
    case Sort::serv:
        return "serv";
    case Sort::repl:
        return "repl";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Construction

namespace terms {

namespace {

Term make( TermKind kind, std::string name = {}, std::vector<Term> args = {} )
{
    return std::make_shared<const TermNode>( TermNode{ kind, std::move( name ), 0, Reply::d, std::move( args ) } );
}

} // namespace

Term var( std::string name )
{
    return make( TermKind::var, std::move( name ) );
}

Term numeral( std::uint64_t n )
{
    return std::make_shared<const TermNode>( TermNode{ TermKind::numeral, {}, n, Reply::d, {} } );
}

Term boolean( bool b )
{
    return std::make_shared<const TermNode>( TermNode{ TermKind::boolean, {}, b ? 1u : 0u, Reply::d, {} } );
}

Term reply( Reply r )
{
    return std::make_shared<const TermNode>( TermNode{ TermKind::reply, {}, 0, r, {} } );
}

Term empty()
{
    return make( TermKind::empty );
}

Term succ( Term t )
{
    return make( TermKind::succ, {}, { std::move( t ) } );
}

Term pred( Term t )
{
    return make( TermKind::pred, {}, { std::move( t ) } );
}

Term nnc( Term t )
{
    return make( TermKind::nnc, {}, { std::move( t ) } );
}

Term reg( Term t )
{
    return make( TermKind::reg, {}, { std::move( t ) } );
}

Term derive( std::string method, Term t )
{
    return make( TermKind::derive, std::move( method ), { std::move( t ) } );
}

Term reply_of( std::string method, Term t )
{
    return make( TermKind::reply_of, std::move( method ), { std::move( t ) } );
}

} // namespace terms

namespace formulas {

namespace {

Formula make( FormulaKind kind, std::vector<Formula> sub = {} )
{
    return std::make_shared<const FormulaNode>( FormulaNode{ kind, nullptr, nullptr, std::move( sub ), {}, Sort::nat } );
}

} // namespace

Formula top()
{
    return make( FormulaKind::top );
}

Formula bottom()
{
    return make( FormulaKind::bottom );
}

Formula eq( Term a, Term b )
{
    return std::make_shared<const FormulaNode>(
            FormulaNode{ FormulaKind::eq, std::move( a ), std::move( b ), {}, {}, Sort::nat } );
}

Formula neq( Term a, Term b )
{
    return neg( eq( std::move( a ), std::move( b ) ) );
}

Formula neg( Formula f )
{
    return make( FormulaKind::neg, { std::move( f ) } );
}

Formula conj( Formula a, Formula b )
{
    return make( FormulaKind::conj, { std::move( a ), std::move( b ) } );
}

Formula disj( Formula a, Formula b )
{
    return make( FormulaKind::disj, { std::move( a ), std::move( b ) } );
}

Formula impl( Formula a, Formula b )
{
    return make( FormulaKind::impl, { std::move( a ), std::move( b ) } );
}

Formula exists( std::string var, Sort sort, Formula body )
{
    return std::make_shared<const FormulaNode>(
            FormulaNode{ FormulaKind::exists, nullptr, nullptr, { std::move( body ) }, std::move( var ), sort } );
}

Formula forall( std::string var, Sort sort, Formula body )
{
    return std::make_shared<const FormulaNode>(
            FormulaNode{ FormulaKind::forall, nullptr, nullptr, { std::move( body ) }, std::move( var ), sort } );
}

} // namespace formulas

// ---------------------------------------------------------------------------
// Printing

std::string to_string( const Term& t )
{
    switch ( t->kind )
    {
    case TermKind::var:
        return t->name;
    case TermKind::numeral:
        return std::to_string( t->value );
    case TermKind::boolean:
        return t->value ? "true" : "false";
    case TermKind::reply:
        return t->reply_value == Reply::t ? ":t" : t->reply_value == Reply::f ? ":f" : ":d";
    case TermKind::empty:
        return "empty";
    case TermKind::succ:
        return "s(" + to_string( t->args[ 0 ] ) + ")";
    case TermKind::pred:
        return "p(" + to_string( t->args[ 0 ] ) + ")";
    case TermKind::nnc:
        return "nnc(" + to_string( t->args[ 0 ] ) + ")";
    case TermKind::reg:
        return "reg(" + to_string( t->args[ 0 ] ) + ")";
    case TermKind::derive:
        return "d[" + t->name + "](" + to_string( t->args[ 0 ] ) + ")";
    case TermKind::reply_of:
        return "r[" + t->name + "](" + to_string( t->args[ 0 ] ) + ")";
    }
    return "?";
}

namespace {

// Binding strength: 1 implication, 2 disjunction, 3 conjunction, 4 negation.
void print_formula( const Formula& f, int context, std::string& out )
{
    auto wrap = [ & ]( int level, auto&& body ) {
        bool parens = level < context;
        if ( parens )
            out += '(';
        body();
        if ( parens )
            out += ')';
    };

    switch ( f->kind )
    {
    case FormulaKind::top:
        out += "true";
        break;
    case FormulaKind::bottom:
        out += "false";
        break;
    case FormulaKind::eq:
        out += to_string( f->lhs ) + " = " + to_string( f->rhs );
        break;
    case FormulaKind::neg:
        out += '~';
        if ( f->sub[ 0 ]->kind == FormulaKind::eq )
        {
            out += '(';
            print_formula( f->sub[ 0 ], 0, out );
            out += ')';
        }
        else
            print_formula( f->sub[ 0 ], 4, out );
        break;
    case FormulaKind::conj:
        wrap( 3, [ & ] {
            print_formula( f->sub[ 0 ], 3, out );
            out += " /\\ ";
            print_formula( f->sub[ 1 ], 4, out );
        } );
        break;
    case FormulaKind::disj:
        wrap( 2, [ & ] {
            print_formula( f->sub[ 0 ], 2, out );
            out += " \\/ ";
            print_formula( f->sub[ 1 ], 3, out );
        } );
        break;
    case FormulaKind::impl:
        wrap( 1, [ & ] {
            print_formula( f->sub[ 0 ], 2, out );
            out += " -> ";
            print_formula( f->sub[ 1 ], 1, out );
        } );
        break;
    case FormulaKind::exists:
    case FormulaKind::forall:
        // A quantifier swallows everything to its right, so it only goes
        // bare at the outermost level.
        wrap( 0, [ & ] {
            out += f->kind == FormulaKind::exists ? "exists " : "forall ";
            out += f->var + ":" + to_string( f->sort ) + ". ";
            print_formula( f->sub[ 0 ], 0, out );
        } );
        break;
    }
}

} // namespace

std::string to_string( const Formula& f )
{
    std::string out;
    print_formula( f, 0, out );
    return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class FormulaParser
{
public:
    explicit FormulaParser( std::string_view text ) : _text{ text } {}

    Formula parse()
    {
        skip_ws();
        if ( at_end() )
            fail( "empty formula" );
        Formula f = parse_impl();
        skip_ws();
        if ( !at_end() )
            fail( std::string{ "unexpected '" } + peek() + "'" );
        return f;
    }

private:
    std::string_view _text;
    std::size_t _pos = 0;

    [[noreturn]] void fail( const std::string& msg ) const { throw ParseError{ _pos + 1, msg }; }

    bool at_end() const { return _pos >= _text.size(); }
    char peek( std::size_t ahead = 0 ) const
    {
        return _pos + ahead < _text.size() ? _text[ _pos + ahead ] : '\0';
    }

    void skip_ws()
    {
        while ( !at_end() && std::isspace( static_cast<unsigned char>( peek() ) ) )
            ++_pos;
    }

    bool accept( std::string_view token )
    {
        skip_ws();
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

    static bool ident_start( char c ) { return std::isalpha( static_cast<unsigned char>( c ) ) || c == '_'; }
    static bool ident_char( char c ) { return std::isalnum( static_cast<unsigned char>( c ) ) || c == '_'; }

    // Identifier at the cursor without consuming it.
    std::string_view peek_word()
    {
        skip_ws();
        std::size_t end = _pos;
        if ( !ident_start( peek() ) )
            return {};
        while ( end < _text.size() && ident_char( _text[ end ] ) )
            ++end;
        return _text.substr( _pos, end - _pos );
    }

    std::string ident()
    {
        std::string_view word = peek_word();
        if ( word.empty() )
            fail( "expected identifier" );
        _pos += word.size();
        return std::string{ word };
    }

    Formula parse_impl()
    {
        Formula lhs = parse_disj();
        if ( accept( "->" ) )
            return formulas::impl( lhs, parse_impl() );
        return lhs;
    }

    Formula parse_disj()
    {
        Formula acc = parse_conj();
        while ( accept( "\\/" ) )
            acc = formulas::disj( acc, parse_conj() );
        return acc;
    }

    Formula parse_conj()
    {
        Formula acc = parse_unary();
        while ( accept( "/\\" ) )
            acc = formulas::conj( acc, parse_unary() );
        return acc;
    }

    Sort parse_sort()
    {
        std::string name = ident();
        if ( name == "nat" )
            return Sort::nat;
        if ( name == "bool" )
            return Sort::boolean;
        if ( name == "serv" )
            return Sort::serv;
        if ( name == "repl" )
            return Sort::repl;
        fail( "unknown sort '" + name + "'" );
    }

    Formula parse_unary()
    {
        if ( accept( "~" ) )
            return formulas::neg( parse_unary() );
        std::string_view word = peek_word();
        if ( word == "exists" || word == "forall" )
        {
            bool is_exists = word == "exists";
            _pos += word.size();
            std::string var = ident();
            expect( ":" );
            Sort sort = parse_sort();
            expect( "." );
            Formula body = parse_impl();
            return is_exists ? formulas::exists( var, sort, body ) : formulas::forall( var, sort, body );
        }
        return parse_primary();
    }

    bool equality_follows()
    {
        std::size_t save = _pos;
        skip_ws();
        bool yes = peek() == '=' || ( peek() == '!' && peek( 1 ) == '=' );
        _pos = save;
        return yes;
    }

    Formula parse_primary()
    {
        skip_ws();
        if ( accept( "(" ) )
        {
            Formula inner = parse_impl();
            expect( ")" );
            return inner;
        }
        std::string_view word = peek_word();
        if ( word == "true" || word == "false" )
        {
            std::size_t save = _pos;
            _pos += word.size();
            if ( !equality_follows() )
                return word == "true" ? formulas::top() : formulas::bottom();
            _pos = save;
        }
        Term lhs = parse_term();
        if ( accept( "!=" ) )
            return formulas::neq( lhs, parse_term() );
        if ( accept( "=" ) )
            return formulas::eq( lhs, parse_term() );
        fail( "expected '=' or '!='" );
    }

    Term parse_arg()
    {
        expect( "(" );
        Term t = parse_term();
        expect( ")" );
        return t;
    }

    Term parse_term()
    {
        skip_ws();
        char c = peek();
        if ( std::isdigit( static_cast<unsigned char>( c ) ) )
        {
            std::uint64_t n = 0;
            while ( std::isdigit( static_cast<unsigned char>( peek() ) ) )
                n = n * 10 + static_cast<std::uint64_t>( _text[ _pos++ ] - '0' );
            return terms::numeral( n );
        }
        if ( c == ':' )
        {
            char r = peek( 1 );
            if ( ( r == 't' || r == 'f' || r == 'd' ) && !ident_char( peek( 2 ) ) )
            {
                _pos += 2;
                return terms::reply( r == 't' ? Reply::t : r == 'f' ? Reply::f : Reply::d );
            }
            fail( "expected reply literal :t, :f or :d" );
        }
        std::string name = ident();
        skip_ws();
        if ( ( name == "d" || name == "r" ) && peek() == '[' )
        {
            ++_pos;
            skip_ws();
            std::size_t start = _pos;
            while ( !at_end() && peek() != ']' && !std::isspace( static_cast<unsigned char>( peek() ) ) )
                ++_pos;
            std::string method{ _text.substr( start, _pos - start ) };
            if ( method.empty() )
                fail( "expected method name" );
            expect( "]" );
            Term arg = parse_arg();
            return name == "d" ? terms::derive( method, arg ) : terms::reply_of( method, arg );
        }
        if ( peek() == '(' )
        {
            if ( name == "s" )
                return terms::succ( parse_arg() );
            if ( name == "p" )
                return terms::pred( parse_arg() );
            if ( name == "nnc" )
                return terms::nnc( parse_arg() );
            if ( name == "reg" )
                return terms::reg( parse_arg() );
            fail( "unknown function '" + name + "'" );
        }
        if ( name == "true" || name == "false" )
            return terms::boolean( name == "true" );
        if ( name == "empty" )
            return terms::empty();
        return terms::var( name );
    }
};

} // namespace

Formula parse_formula( std::string_view text )
{
    return FormulaParser{ text }.parse();
}

// ---------------------------------------------------------------------------
// Sorts

namespace {

class SortInference
{
public:
    std::map<std::string, std::optional<Sort>> free;
    bool changed = false;

    void formula( const Formula& f )
    {
        switch ( f->kind )
        {
        case FormulaKind::top:
        case FormulaKind::bottom:
            return;
        case FormulaKind::eq:
        {
            std::optional<Sort> l = term( f->lhs, std::nullopt );
            std::optional<Sort> r = term( f->rhs, l );
            if ( !l && r )
                term( f->lhs, r );
            return;
        }
        case FormulaKind::neg:
        case FormulaKind::conj:
        case FormulaKind::disj:
        case FormulaKind::impl:
            for ( const auto& s : f->sub )
                formula( s );
            return;
        case FormulaKind::exists:
        case FormulaKind::forall:
            _scope.emplace_back( f->var, f->sort );
            formula( f->sub[ 0 ] );
            _scope.pop_back();
            return;
        }
    }

private:
    std::vector<std::pair<std::string, Sort>> _scope;

    static void check( Sort actual, std::optional<Sort> expected, const Term& t )
    {
        if ( expected && *expected != actual )
            throw SortError{ "term '" + to_string( t ) + "' has sort " + to_string( actual ) + ", expected " +
                             to_string( *expected ) };
    }

    std::optional<Sort> term( const Term& t, std::optional<Sort> expected )
    {
        auto fixed = [ & ]( Sort s ) {
            check( s, expected, t );
            return std::optional<Sort>{ s };
        };
        switch ( t->kind )
        {
        case TermKind::var:
        {
            for ( auto it = _scope.rbegin(); it != _scope.rend(); ++it )
                if ( it->first == t->name )
                    return fixed( it->second );
            auto& slot = free[ t->name ];
            if ( slot )
                return fixed( *slot );
            if ( expected )
            {
                slot = expected;
                changed = true;
            }
            return expected;
        }
        case TermKind::numeral:
            return fixed( Sort::nat );
        case TermKind::boolean:
            return fixed( Sort::boolean );
        case TermKind::reply:
            return fixed( Sort::repl );
        case TermKind::empty:
            return fixed( Sort::serv );
        case TermKind::succ:
        case TermKind::pred:
            term( t->args[ 0 ], Sort::nat );
            return fixed( Sort::nat );
        case TermKind::nnc:
            term( t->args[ 0 ], Sort::nat );
            return fixed( Sort::serv );
        case TermKind::reg:
            term( t->args[ 0 ], Sort::boolean );
            return fixed( Sort::serv );
        case TermKind::derive:
            term( t->args[ 0 ], Sort::serv );
            return fixed( Sort::serv );
        case TermKind::reply_of:
            term( t->args[ 0 ], Sort::serv );
            return fixed( Sort::repl );
        }
        return std::nullopt;
    }
};

} // namespace

std::map<std::string, Sort> free_variables( const Formula& f )
{
    SortInference inference;
    do
    {
        inference.changed = false;
        inference.formula( f );
    } while ( inference.changed );

    for ( auto& [ name, sort ] : inference.free )
        if ( !sort )
            sort = Sort::serv;
    // Final pass validates every use against the settled sorts.
    inference.formula( f );

    std::map<std::string, Sort> out;
    for ( const auto& [ name, sort ] : inference.free )
        out.emplace( name, *sort );
    return out;
}

std::set<std::string> free_foci( const Formula& f )
{
    std::set<std::string> out;
    for ( const auto& [ name, sort ] : free_variables( f ) )
        if ( sort == Sort::serv )
            out.insert( name );
    return out;
}

namespace {

void term_names( const Term& t, const std::set<std::string>& bound, std::set<std::string>& out )
{
    if ( t->kind == TermKind::var )
    {
        if ( !bound.contains( t->name ) )
            out.insert( t->name );
        return;
    }
    for ( const auto& a : t->args )
        term_names( a, bound, out );
}

void formula_names( const Formula& f, std::set<std::string>& bound, std::set<std::string>& out )
{
    switch ( f->kind )
    {
    case FormulaKind::top:
    case FormulaKind::bottom:
        return;
    case FormulaKind::eq:
        term_names( f->lhs, bound, out );
        term_names( f->rhs, bound, out );
        return;
    case FormulaKind::exists:
    case FormulaKind::forall:
    {
        bool fresh = bound.insert( f->var ).second;
        formula_names( f->sub[ 0 ], bound, out );
        if ( fresh )
            bound.erase( f->var );
        return;
    }
    default:
        for ( const auto& s : f->sub )
            formula_names( s, bound, out );
    }
}

} // namespace

std::set<std::string> free_names( const Formula& f )
{
    std::set<std::string> bound, out;
    formula_names( f, bound, out );
    return out;
}

// ---------------------------------------------------------------------------
// Substitution

namespace {

Term substitute_term( const Term& t, const std::string& name, const Term& replacement )
{
    if ( t->kind == TermKind::var )
        return t->name == name ? replacement : t;
    if ( t->args.empty() )
        return t;
    Term arg = substitute_term( t->args[ 0 ], name, replacement );
    if ( arg == t->args[ 0 ] )
        return t;
    return std::make_shared<const TermNode>( TermNode{ t->kind, t->name, t->value, t->reply_value, { arg } } );
}

std::string fresh_name( const std::string& base, const std::set<std::string>& avoid )
{
    for ( std::size_t i = 1;; ++i )
    {
        std::string candidate = base + "_" + std::to_string( i );
        if ( !avoid.contains( candidate ) )
            return candidate;
    }
}

Formula substitute_impl( const Formula& f, const std::string& name, const Term& replacement,
                         const std::set<std::string>& replacement_names )
{
    switch ( f->kind )
    {
    case FormulaKind::top:
    case FormulaKind::bottom:
        return f;
    case FormulaKind::eq:
        return formulas::eq( substitute_term( f->lhs, name, replacement ),
                             substitute_term( f->rhs, name, replacement ) );
    case FormulaKind::neg:
        return formulas::neg( substitute_impl( f->sub[ 0 ], name, replacement, replacement_names ) );
    case FormulaKind::conj:
    case FormulaKind::disj:
    case FormulaKind::impl:
    {
        auto node = *f;
        for ( auto& s : node.sub )
            s = substitute_impl( s, name, replacement, replacement_names );
        return std::make_shared<const FormulaNode>( std::move( node ) );
    }
    case FormulaKind::exists:
    case FormulaKind::forall:
    {
        if ( f->var == name || !free_names( f->sub[ 0 ] ).contains( name ) )
            return f;
        std::string var = f->var;
        Formula body = f->sub[ 0 ];
        if ( replacement_names.contains( var ) )
        {
            std::set<std::string> avoid = free_names( body );
            avoid.insert( replacement_names.begin(), replacement_names.end() );
            avoid.insert( name );
            std::string renamed = fresh_name( var, avoid );
            body = substitute_impl( body, var, terms::var( renamed ), { renamed } );
            var = renamed;
        }
        body = substitute_impl( body, name, replacement, replacement_names );
        return f->kind == FormulaKind::exists ? formulas::exists( var, f->sort, body )
                                              : formulas::forall( var, f->sort, body );
    }
    }
    return f;
}

} // namespace

Formula substitute( const Formula& f, const std::string& name, const Term& replacement )
{
    std::set<std::string> names;
    term_names( replacement, {}, names );
    return substitute_impl( f, name, replacement, names );
}

Formula substitute_derive( const Formula& f, const std::string& focus, const std::string& method )
{
    return substitute( f, focus, terms::derive( method, terms::var( focus ) ) );
}

Formula rename( const Formula& f, const std::string& from, const std::string& to )
{
    return substitute( f, from, terms::var( to ) );
}

// ---------------------------------------------------------------------------
// Alpha equivalence

namespace {

using BinderStack = std::vector<std::pair<std::string, std::string>>;

// Numeral value of s(...s(n)...), if the term has that shape.
std::optional<std::uint64_t> successor_chain( const Term& t )
{
    std::uint64_t extra = 0;
    const TermNode* n = t.get();
    while ( n->kind == TermKind::succ )
    {
        ++extra;
        n = n->args[ 0 ].get();
    }
    if ( n->kind == TermKind::numeral )
        return n->value + extra;
    return std::nullopt;
}

bool alpha_term( const Term& a, const Term& b, const BinderStack& binders )
{
    if ( auto va = successor_chain( a ) )
    {
        auto vb = successor_chain( b );
        return vb && *va == *vb;
    }
    if ( a->kind != b->kind )
        return false;
    switch ( a->kind )
    {
    case TermKind::var:
        for ( auto it = binders.rbegin(); it != binders.rend(); ++it )
        {
            bool left = it->first == a->name;
            bool right = it->second == b->name;
            if ( left || right )
                return left && right;
        }
        return a->name == b->name;
    case TermKind::numeral:
    case TermKind::boolean:
        return a->value == b->value;
    case TermKind::reply:
        return a->reply_value == b->reply_value;
    case TermKind::empty:
        return true;
    default:
        return a->name == b->name && alpha_term( a->args[ 0 ], b->args[ 0 ], binders );
    }
}

bool alpha_formula( const Formula& a, const Formula& b, BinderStack& binders )
{
    if ( a->kind != b->kind )
        return false;
    switch ( a->kind )
    {
    case FormulaKind::top:
    case FormulaKind::bottom:
        return true;
    case FormulaKind::eq:
        return alpha_term( a->lhs, b->lhs, binders ) && alpha_term( a->rhs, b->rhs, binders );
    case FormulaKind::exists:
    case FormulaKind::forall:
    {
        if ( a->sort != b->sort )
            return false;
        binders.emplace_back( a->var, b->var );
        bool same = alpha_formula( a->sub[ 0 ], b->sub[ 0 ], binders );
        binders.pop_back();
        return same;
    }
    default:
        for ( std::size_t i = 0; i < a->sub.size(); ++i )
            if ( !alpha_formula( a->sub[ i ], b->sub[ i ], binders ) )
                return false;
        return true;
    }
}

} // namespace

bool alpha_equal( const Formula& a, const Formula& b )
{
    if ( a == b )
        return true;
    BinderStack binders;
    return alpha_formula( a, b, binders );
}

} // namespace pga
