#include "lexdialog/syntax.hpp"

#include <cctype>
#include <charconv>
#include <optional>
#include <vector>

namespace lexdialog
{

namespace
{

enum class tok
{
    ident,
    integer,
    lparen,
    rparen,
    comma,
    dot,
    amp,
    bar,
    bang,
    arrow,
    dblarrow,
    cmp,
    end,
};

struct token
{
    tok type = tok::end;
    std::string text;
    std::int64_t value = 0;
    cmp_op op = cmp_op::eq;
    source_span span;
};

class lexer
{
    std::string_view _src;
    std::size_t _pos = 0;
    std::size_t _line = 1;
    std::size_t _col = 1;

    void advance()
    {
        if ( _src[ _pos ] == '\n' )
        {
            ++_line;
            _col = 1;
        }
        else
            ++_col;
        ++_pos;
    }

    [[nodiscard]] char peek( std::size_t ahead = 0 ) const
    {
        return _pos + ahead < _src.size() ? _src[ _pos + ahead ] : '\0';
    }

public:
    explicit lexer( std::string_view src ) : _src{ src } {}

    std::vector< token > run()
    {
        std::vector< token > out;
        for ( ;; )
        {
            while ( _pos < _src.size() )
            {
                char c = peek();
                if ( c == '#' )
                {
                    while ( _pos < _src.size() && peek() != '\n' )
                        advance();
                }
                else if ( std::isspace( static_cast< unsigned char >( c ) ) )
                    advance();
                else
                    break;
            }

            token t;
            t.span = { _pos, _pos, _line, _col };
            if ( _pos >= _src.size() )
            {
                out.push_back( t );
                return out;
            }

            char c = peek();
            auto take = [ & ]( tok type, std::size_t n ) {
                t.type = type;
                for ( std::size_t i = 0; i < n; ++i )
                    advance();
            };

            if ( std::isalpha( static_cast< unsigned char >( c ) ) )
            {
                t.type = tok::ident;
                while ( _pos < _src.size()
                        && ( std::isalnum( static_cast< unsigned char >( peek() ) ) || peek() == '_' ) )
                    advance();
                t.text = std::string{ _src.substr( t.span.begin, _pos - t.span.begin ) };
            }
            else if ( std::isdigit( static_cast< unsigned char >( c ) )
                      || ( c == '-' && std::isdigit( static_cast< unsigned char >( peek( 1 ) ) ) ) )
            {
                t.type = tok::integer;
                advance();
                while ( std::isdigit( static_cast< unsigned char >( peek() ) ) )
                    advance();
                t.text = std::string{ _src.substr( t.span.begin, _pos - t.span.begin ) };
                auto [ ptr, ec ] = std::from_chars( t.text.data(), t.text.data() + t.text.size(), t.value );
                if ( ec != std::errc{} )
                {
                    t.span.end = _pos;
                    throw parse_error{ "integer literal '" + t.text + "' out of range", t.span };
                }
            }
            else if ( c == '(' )
                take( tok::lparen, 1 );
            else if ( c == ')' )
                take( tok::rparen, 1 );
            else if ( c == ',' )
                take( tok::comma, 1 );
            else if ( c == '.' )
                take( tok::dot, 1 );
            else if ( c == '&' )
                take( tok::amp, 1 );
            else if ( c == '|' )
                take( tok::bar, 1 );
            else if ( c == '-' && peek( 1 ) == '>' )
                take( tok::arrow, 2 );
            else if ( c == '<' && peek( 1 ) == '-' && peek( 2 ) == '>' )
                take( tok::dblarrow, 3 );
            else if ( c == '!' && peek( 1 ) == '=' )
            {
                take( tok::cmp, 2 );
                t.op = cmp_op::ne;
            }
            else if ( c == '!' )
                take( tok::bang, 1 );
            else if ( c == '=' )
            {
                take( tok::cmp, 1 );
                t.op = cmp_op::eq;
            }
            else if ( c == '<' )
            {
                bool eq = peek( 1 ) == '=';
                take( tok::cmp, eq ? 2 : 1 );
                t.op = eq ? cmp_op::le : cmp_op::lt;
            }
            else if ( c == '>' )
            {
                bool eq = peek( 1 ) == '=';
                take( tok::cmp, eq ? 2 : 1 );
                t.op = eq ? cmp_op::ge : cmp_op::gt;
            }
            else
            {
                std::size_t len = 1;
                // Keep multi-byte UTF-8 sequences whole in the reported span.
                while ( _pos + len < _src.size() && ( static_cast< unsigned char >( _src[ _pos + len ] ) & 0xC0 ) == 0x80 )
                    ++len;
                t.span.end = _pos + len;
                throw parse_error{ "unexpected character '" + std::string{ _src.substr( _pos, len ) } + "'", t.span };
            }
            t.span.end = _pos;
            if ( t.text.empty() )
                t.text = std::string{ _src.substr( t.span.begin, t.span.end - t.span.begin ) };
            out.push_back( std::move( t ) );
        }
    }
};

std::string describe( const token& t )
{
    return t.type == tok::end ? std::string{ "end of input" } : "'" + t.text + "'";
}

class parser
{
    const signature& _sig;
    std::vector< token > _toks;
    std::size_t _pos = 0;
    std::vector< std::string > _bound;

    [[nodiscard]] bool relational() const { return _sig.kind() == layer::relational; }
    [[nodiscard]] const token& cur() const { return _toks[ _pos ]; }
    [[nodiscard]] const token& at( std::size_t i ) const { return _toks[ std::min( i, _toks.size() - 1 ) ]; }

    [[nodiscard]] bool is_word( const token& t, std::string_view w ) const
    {
        return t.type == tok::ident && t.text == w;
    }

    [[noreturn]] void fail( const std::string& msg, const token& t ) const
    {
        throw parse_error{ msg, t.span };
    }

    const token& expect( tok type, std::string_view what )
    {
        if ( cur().type != type )
            fail( "expected " + std::string{ what } + " but found " + describe( cur() ), cur() );
        return _toks[ _pos++ ];
    }

    [[nodiscard]] source_span span_from( std::size_t first_tok ) const
    {
        const auto& a = _toks[ first_tok ].span;
        const auto& b = _toks[ _pos - 1 ].span;
        return { a.begin, b.end, a.line, a.column };
    }

    formula finish( formula f, std::size_t first_tok ) const { return f.with_span( span_from( first_tok ) ); }

    [[nodiscard]] bool is_bound( const std::string& v ) const
    {
        for ( const auto& b : _bound )
            if ( b == v )
                return true;
        return false;
    }

    void layer_mismatch( const token& t ) const
    {
        fail( "layer mismatch: '" + t.text + "' is not available in a " + std::string{ to_string( _sig.kind() ) }
                  + " law",
              t );
    }

    [[nodiscard]] static bool is_temporal_unary( const token& t )
    {
        return t.type == tok::ident && ( t.text == "X" || t.text == "N" || t.text == "F" || t.text == "G" );
    }

    [[nodiscard]] static bool is_relational_word( const token& t )
    {
        return t.type == tok::ident && ( t.text == "forall" || t.text == "exists" || t.text == "same" || t.text == "except" );
    }

public:
    parser( const signature& sig, std::vector< token > toks ) : _sig{ sig }, _toks{ std::move( toks ) } {}

    formula sentence()
    {
        formula f = parse_iff();
        if ( cur().type != tok::end )
            fail( "unexpected " + describe( cur() ) + " after complete formula", cur() );
        return f;
    }

private:
    formula parse_iff()
    {
        std::size_t first = _pos;
        formula lhs = parse_implies();
        while ( cur().type == tok::dblarrow )
        {
            ++_pos;
            formula rhs = parse_implies();
            lhs = finish( formula::iff( lhs, rhs ), first );
        }
        return lhs;
    }

    formula parse_implies()
    {
        std::size_t first = _pos;
        formula lhs = parse_or();
        if ( cur().type == tok::arrow )
        {
            ++_pos;
            formula rhs = parse_implies();
            return finish( formula::implies( lhs, rhs ), first );
        }
        return lhs;
    }

    formula parse_or()
    {
        std::size_t first = _pos;
        formula lhs = parse_and();
        while ( cur().type == tok::bar )
        {
            ++_pos;
            formula rhs = parse_and();
            lhs = finish( formula::disj( lhs, rhs ), first );
        }
        return lhs;
    }

    formula parse_and()
    {
        std::size_t first = _pos;
        formula lhs = parse_until();
        while ( cur().type == tok::amp )
        {
            ++_pos;
            formula rhs = parse_until();
            lhs = finish( formula::conj( lhs, rhs ), first );
        }
        return lhs;
    }

    formula parse_until()
    {
        std::size_t first = _pos;
        formula lhs = parse_unary();
        if ( is_word( cur(), "U" ) || is_word( cur(), "R" ) )
        {
            if ( relational() )
                layer_mismatch( cur() );
            bool until = cur().text == "U";
            ++_pos;
            formula rhs = parse_until();
            return finish( until ? formula::until( lhs, rhs ) : formula::release( lhs, rhs ), first );
        }
        return lhs;
    }

    formula parse_unary()
    {
        std::size_t first = _pos;
        const token& t = cur();
        if ( t.type == tok::bang )
        {
            ++_pos;
            return finish( formula::negate( parse_unary() ), first );
        }
        if ( is_temporal_unary( t ) )
        {
            if ( relational() )
                layer_mismatch( t );
            char which = t.text[ 0 ];
            ++_pos;
            formula body = parse_unary();
            formula f = which == 'X'   ? formula::next( body )
                        : which == 'N' ? formula::weak_next( body )
                        : which == 'F' ? formula::eventually( body )
                                       : formula::globally( body );
            return finish( f, first );
        }
        if ( is_word( t, "forall" ) || is_word( t, "exists" ) )
        {
            if ( !relational() )
                layer_mismatch( t );
            bool universal = t.text == "forall";
            ++_pos;
            const token& v = expect( tok::ident, "a variable name" );
            check_binder( v );
            expect( tok::dot, "'.'" );
            _bound.push_back( v.text );
            formula body = parse_iff();
            _bound.pop_back();
            return finish( universal ? formula::forall( v.text, body ) : formula::exists( v.text, body ), first );
        }
        return parse_primary();
    }

    void check_binder( const token& v ) const
    {
        if ( is_reserved_word( v.text ) )
            fail( "'" + v.text + "' is a reserved word and cannot name a variable", v );
        if ( _sig.declares( v.text ) )
            fail( "variable '" + v.text + "' clashes with a declared symbol", v );
    }

    formula parse_primary()
    {
        std::size_t first = _pos;
        const token& t = cur();
        if ( t.type == tok::lparen )
        {
            ++_pos;
            formula inner = parse_iff();
            expect( tok::rparen, "')'" );
            return inner;
        }
        if ( is_word( t, "true" ) )
        {
            ++_pos;
            return finish( formula::top(), first );
        }
        if ( is_word( t, "false" ) )
        {
            ++_pos;
            return finish( formula::bottom(), first );
        }
        if ( relational() )
            return parse_relational_atom();
        return parse_temporal_atom();
    }

    formula parse_temporal_atom()
    {
        std::size_t first = _pos;
        const token& t = cur();
        if ( is_relational_word( t ) )
            layer_mismatch( t );
        if ( t.type != tok::ident )
            fail( "expected a formula but found " + describe( t ), t );
        if ( is_reserved_word( t.text ) )
            fail( "unexpected keyword '" + t.text + "'", t );
        if ( !_sig.atom_index( t.text ) )
            fail( "unknown symbol '" + t.text + "'", t );
        ++_pos;
        if ( cur().type == tok::lparen )
            fail( "arity misuse: atom '" + t.text + "' takes no arguments", cur() );
        if ( cur().type == tok::cmp )
            layer_mismatch( cur() );
        return finish( formula::atom( t.text ), first );
    }

    std::string bound_variable()
    {
        const token& v = cur();
        if ( v.type != tok::ident )
            fail( "expected a variable but found " + describe( v ), v );
        if ( !is_bound( v.text ) )
        {
            if ( _sig.declares( v.text ) )
                fail( "arity misuse: '" + v.text + "' is a symbol, not a variable", v );
            fail( "unbound variable '" + v.text + "'", v );
        }
        ++_pos;
        return v.text;
    }

    formula parse_relational_atom()
    {
        std::size_t first = _pos;
        const token& t = cur();

        if ( is_word( t, "same" ) )
        {
            ++_pos;
            expect( tok::lparen, "'('" );
            std::string x = bound_variable();
            expect( tok::comma, "','" );
            std::string y = bound_variable();
            expect( tok::rparen, "')'" );
            std::vector< std::string > excluded;
            if ( is_word( cur(), "except" ) )
            {
                ++_pos;
                for ( ;; )
                {
                    const token& f = expect( tok::ident, "a function name" );
                    if ( !_sig.function_index( f.text ) )
                        fail( "unknown function '" + f.text + "' in except list", f );
                    excluded.push_back( f.text );
                    if ( cur().type != tok::comma )
                        break;
                    ++_pos;
                }
            }
            return finish( formula::same_except( std::move( x ), std::move( y ), std::move( excluded ) ), first );
        }

        if ( t.type == tok::ident && _sig.predicate_index( t.text ) )
        {
            ++_pos;
            if ( cur().type != tok::lparen )
                fail( "arity misuse: predicate '" + t.text + "' needs one argument", t );
            ++_pos;
            std::string v = bound_variable();
            if ( cur().type == tok::comma )
                fail( "arity misuse: predicate '" + t.text + "' is unary", cur() );
            expect( tok::rparen, "')'" );
            if ( cur().type == tok::cmp )
                fail( "predicate '" + t.text + "' cannot be compared", cur() );
            return finish( formula::pred( t.text, std::move( v ) ), first );
        }

        if ( is_temporal_unary( t ) || is_word( t, "U" ) || is_word( t, "R" ) )
            layer_mismatch( t );

        std::size_t lhs_tok = _pos;
        term lhs = parse_term();
        if ( cur().type != tok::cmp )
            fail( "expected a comparison operator but found " + describe( cur() ), cur() );
        cmp_op op = cur().op;
        const token& op_tok = cur();
        ++_pos;
        term rhs = parse_term();

        bool lvar = lhs.type == term::kind::variable;
        bool rvar = rhs.type == term::kind::variable;
        if ( lvar != rvar )
            fail( "cannot compare an individual with a number", _toks[ lhs_tok ] );
        if ( lvar && op != cmp_op::eq && op != cmp_op::ne )
            fail( "individuals can only be compared with = or !=", op_tok );
        return finish( formula::cmp( std::move( lhs ), op, std::move( rhs ) ), first );
    }

    term parse_term()
    {
        const token& t = cur();
        if ( t.type == tok::integer )
        {
            if ( !_sig.literal_admissible( t.value ) )
                fail( "literal " + t.text + " lies outside every declared function range", t );
            ++_pos;
            return term::lit( t.value );
        }
        if ( t.type != tok::ident )
            fail( "expected a term but found " + describe( t ), t );
        if ( is_reserved_word( t.text ) )
            fail( "unexpected keyword '" + t.text + "'", t );
        if ( _sig.function_index( t.text ) )
        {
            ++_pos;
            if ( cur().type != tok::lparen )
                fail( "arity misuse: function '" + t.text + "' needs one argument", t );
            ++_pos;
            std::string v = bound_variable();
            if ( cur().type == tok::comma )
                fail( "arity misuse: function '" + t.text + "' is unary", cur() );
            expect( tok::rparen, "')'" );
            return term::app( t.text, std::move( v ) );
        }
        if ( at( _pos + 1 ).type == tok::lparen )
            fail( "unknown symbol '" + t.text + "'", t );
        if ( is_bound( t.text ) )
        {
            ++_pos;
            return term::var( t.text );
        }
        if ( _sig.declares( t.text ) )
            fail( "arity misuse: '" + t.text + "' used as a term", t );
        fail( "unknown symbol or unbound variable '" + t.text + "'", t );
    }
};

} // namespace

formula parse( std::string_view source, const signature& sig )
{
    lexer lex{ source };
    parser p{ sig, lex.run() };
    return p.sentence();
}

} // namespace lexdialog
