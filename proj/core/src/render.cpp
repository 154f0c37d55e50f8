#include "lexdialog/syntax.hpp"

namespace lexdialog
{

namespace
{

enum prec : int
{
    p_iff = 1,
    p_implies = 2,
    p_or = 3,
    p_and = 4,
    p_until = 5,
    p_unary = 6,
    p_atomic = 7,
};

int precedence( const formula& f )
{
    switch ( f.kind() )
    {
    case node_kind::iff: return p_iff;
    case node_kind::implies: return p_implies;
    case node_kind::or_: return p_or;
    case node_kind::and_: return p_and;
    case node_kind::until:
    case node_kind::release: return p_until;
    case node_kind::not_:
    case node_kind::next:
    case node_kind::weak_next:
    case node_kind::eventually:
    case node_kind::globally: return p_unary;
    default: return p_atomic;
    }
}

bool right_assoc( node_kind k )
{
    return k == node_kind::implies || k == node_kind::until || k == node_kind::release;
}

std::string_view op_text( node_kind k )
{
    switch ( k )
    {
    case node_kind::iff: return " <-> ";
    case node_kind::implies: return " -> ";
    case node_kind::or_: return " | ";
    case node_kind::and_: return " & ";
    case node_kind::until: return " U ";
    case node_kind::release: return " R ";
    case node_kind::not_: return "!";
    case node_kind::next: return "X ";
    case node_kind::weak_next: return "N ";
    case node_kind::eventually: return "F ";
    case node_kind::globally: return "G ";
    default: return "";
    }
}

std::string render_term( const term& t )
{
    switch ( t.type )
    {
    case term::kind::variable: return t.name;
    case term::kind::literal: return std::to_string( t.value );
    case term::kind::apply: return t.name + "(" + t.arg + ")";
    }
    return {};
}

// `open_right` is true when nothing follows this subformula before the end of
// the enclosing group, so a greedy quantifier body may be printed bare.
void emit( const formula& f, int min_prec, bool open_right, std::string& out )
{
    if ( f.is_quantifier() )
    {
        if ( !open_right )
            out += '(';
        out += f.kind() == node_kind::forall ? "forall " : "exists ";
        out += f.variable();
        out += ". ";
        emit( f.body(), 0, true, out );
        if ( !open_right )
            out += ')';
        return;
    }

    int p = precedence( f );
    if ( p < min_prec )
    {
        out += '(';
        emit( f, 0, true, out );
        out += ')';
        return;
    }

    switch ( f.kind() )
    {
    case node_kind::top: out += "true"; return;
    case node_kind::bottom: out += "false"; return;
    case node_kind::atom: out += f.symbol(); return;
    case node_kind::pred:
        out += f.symbol();
        out += '(';
        out += f.variable();
        out += ')';
        return;
    case node_kind::cmp:
        out += render_term( f.lhs_term() );
        out += ' ';
        out += to_string( f.op() );
        out += ' ';
        out += render_term( f.rhs_term() );
        return;
    case node_kind::same_except:
        out += "same(" + f.variable() + ", " + f.second_variable() + ")";
        if ( !f.excluded().empty() )
        {
            out += " except ";
            for ( std::size_t i = 0; i < f.excluded().size(); ++i )
            {
                if ( i )
                    out += ", ";
                out += f.excluded()[ i ];
            }
        }
        return;
    default: break;
    }

    if ( f.is_unary_connective() )
    {
        out += op_text( f.kind() );
        emit( f.body(), p_unary, open_right, out );
        return;
    }

    bool ra = right_assoc( f.kind() );
    emit( f.left(), ra ? p + 1 : p, false, out );
    out += op_text( f.kind() );
    emit( f.right(), ra ? p : p + 1, open_right, out );
}

} // namespace

std::string render( const formula& f )
{
    std::string out;
    emit( f, 0, true, out );
    return out;
}

} // namespace lexdialog
