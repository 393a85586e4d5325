#pragma once

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "tfgkit/equation.hpp"
#include "tfgkit/error.hpp"
#include "tfgkit/matrix.hpp"
#include "tfgkit/petri.hpp"
#include "tfgkit/util.hpp"

namespace tfgkit {

struct ParsedNet {
    PetriNet net;
    Marking initial;
};

// ---------------------------------------------------------------------------
// Plain net grammar
//
//   pl <name> <nat>
//   tr <name> <in>* -> <out>*      with <in>/<out> = <place> | <place>*<weight>
//
// `#` starts a comment. Places may be declared after the transitions that use
// them; both kinds keep their relative declaration order.
// ---------------------------------------------------------------------------

inline ParsedNet parse_net(std::string_view text) {
    struct PendingTransition {
        std::size_t line;
        std::string name;
        std::vector<std::pair<std::string, Tokens>> pre, post;
    };

    ParsedNet out;
    std::vector<PendingTransition> pending;
    const auto lines = detail::split_lines(text);

    auto parse_arc = [](std::size_t line, std::string_view item) {
        std::string_view name = item;
        std::uint64_t weight = 1;
        if (auto star = item.find('*'); star != std::string_view::npos) {
            name = item.substr(0, star);
            if (!detail::parse_nat(item.substr(star + 1), weight) || weight == 0 || weight > UINT32_MAX)
                throw SyntaxError(line, "bad arc weight in '" + std::string(item) + "'");
        }
        if (name.empty()) throw SyntaxError(line, "empty place name in arc");
        return std::pair<std::string, Tokens>{std::string(name), static_cast<Tokens>(weight)};
    };

    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t line = i + 1;
        std::string_view l = lines[i];
        if (auto hash = l.find('#'); hash != std::string_view::npos) l = l.substr(0, hash);
        const auto tok = detail::split_ws(l);
        if (tok.empty()) continue;
        if (tok[0] == "pl") {
            if (tok.size() != 3) throw SyntaxError(line, "expected 'pl <name> <tokens>'");
            std::uint64_t n = 0;
            if (!detail::parse_nat(tok[2], n) || n > UINT32_MAX)
                throw SyntaxError(line, "bad token count '" + std::string(tok[2]) + "'");
            try {
                out.net.add_place(std::string(tok[1]));
            } catch (const SyntaxError& e) {
                throw SyntaxError(line, e.what());
            }
            out.initial.set(std::string(tok[1]), static_cast<Tokens>(n));
        } else if (tok[0] == "tr") {
            if (tok.size() < 3) throw SyntaxError(line, "expected 'tr <name> <in>* -> <out>*'");
            PendingTransition t{line, std::string(tok[1]), {}, {}};
            bool seen_arrow = false;
            for (std::size_t k = 2; k < tok.size(); ++k) {
                if (tok[k] == "->") {
                    if (seen_arrow) throw SyntaxError(line, "more than one '->'");
                    seen_arrow = true;
                    continue;
                }
                (seen_arrow ? t.post : t.pre).push_back(parse_arc(line, tok[k]));
            }
            if (!seen_arrow) throw SyntaxError(line, "missing '->'");
            pending.push_back(std::move(t));
        } else {
            throw SyntaxError(line, "unknown declaration '" + std::string(tok[0]) + "'");
        }
    }
    for (const auto& t : pending) {
        try {
            out.net.add_transition(t.name, t.pre, t.post);
        } catch (const SyntaxError& e) {
            throw SyntaxError(t.line, e.what());
        }
    }
    return out;
}

inline std::string write_net(const PetriNet& net, const Marking& initial) {
    std::ostringstream os;
    for (const auto& p : net.places()) os << "pl " << p << ' ' << initial.get(p) << '\n';
    auto arcs = [&](const std::vector<Arc>& list) {
        for (const auto& a : list) {
            os << ' ' << net.places()[a.place];
            if (a.weight != 1) os << '*' << a.weight;
        }
    };
    for (const auto& t : net.transitions()) {
        os << "tr " << t.name;
        arcs(t.pre);
        os << " ->";
        arcs(t.post);
        os << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// PNML (P/T nets only). Place and transition ids are used as names; graphics,
// names and toolspecific sections (NUPN units included) are ignored.
// ---------------------------------------------------------------------------

inline ParsedNet parse_pnml(const std::string& xml) {
    namespace pt = boost::property_tree;
    pt::ptree doc;
    try {
        std::istringstream in(xml);
        pt::read_xml(in, doc, pt::xml_parser::trim_whitespace);
    } catch (const pt::xml_parser_error& e) {
        throw SyntaxError(e.line(), e.message());
    }
    const auto pnml = doc.get_child_optional("pnml");
    if (!pnml) throw SyntaxError(0, "missing <pnml> root element");
    const auto net_node = pnml->get_child_optional("net");
    if (!net_node) throw SyntaxError(0, "missing <net> element");

    const std::string type = net_node->get("<xmlattr>.type", "");
    if (!type.empty() && type.find("ptnet") == std::string::npos)
        throw Unsupported("net type " + type);

    struct RawArc {
        std::string source, target;
        Tokens weight;
    };
    std::vector<std::pair<std::string, Tokens>> places;
    std::vector<std::string> transitions;
    std::vector<RawArc> arcs;

    auto text_nat = [](const pt::ptree& node, const char* what) -> Tokens {
        const std::string raw(detail::trim(node.get<std::string>("text", "")));
        std::uint64_t n = 0;
        if (!detail::parse_nat(raw, n) || n > UINT32_MAX)
            throw SyntaxError(0, std::string("bad ") + what + " '" + raw + "'");
        return static_cast<Tokens>(n);
    };

    auto visit = [&](auto&& self, const pt::ptree& scope) -> void {
        for (const auto& [tag, child] : scope) {
            if (tag == "page") {
                self(self, child);
            } else if (tag == "place") {
                Tokens m0 = 0;
                if (auto im = child.get_child_optional("initialMarking")) m0 = text_nat(*im, "initial marking");
                places.emplace_back(child.get("<xmlattr>.id", std::string()), m0);
            } else if (tag == "transition") {
                transitions.push_back(child.get("<xmlattr>.id", std::string()));
            } else if (tag == "arc") {
                std::string kind = child.get("<xmlattr>.type", "");
                if (auto t = child.get_child_optional("type")) kind = t->get("<xmlattr>.value", kind);
                if (!kind.empty() && kind != "normal") throw Unsupported(kind + " arc");
                Tokens w = 1;
                if (auto ins = child.get_child_optional("inscription")) w = text_nat(*ins, "arc inscription");
                arcs.push_back({child.get("<xmlattr>.source", std::string()),
                                child.get("<xmlattr>.target", std::string()), w});
            }
        }
    };
    visit(visit, *net_node);

    ParsedNet out;
    for (const auto& [id, m0] : places) {
        out.net.add_place(id);
        out.initial.set(id, m0);
    }
    std::map<std::string, std::pair<std::vector<Arc>, std::vector<Arc>>> flows;
    std::set<std::string> transition_ids(transitions.begin(), transitions.end());
    for (const auto& a : arcs) {
        if (auto p = out.net.find_place(a.source); p && transition_ids.count(a.target)) {
            flows[a.target].first.push_back({*p, a.weight});
        } else if (auto q = out.net.find_place(a.target); q && transition_ids.count(a.source)) {
            flows[a.source].second.push_back({*q, a.weight});
        } else {
            throw SyntaxError(0, "arc " + a.source + " -> " + a.target + " does not link a place and a transition");
        }
    }
    for (const auto& t : transitions) {
        auto& f = flows[t];
        out.net.add_transition(t, f.first, f.second);
    }
    return out;
}

enum class NetFormat { Auto, Net, Pnml };

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline ParsedNet load_net(const std::string& path, NetFormat format = NetFormat::Auto) {
    if (format == NetFormat::Auto) {
        const bool xml = path.size() >= 5 && (path.substr(path.size() - 5) == ".pnml" || path.substr(path.size() - 4) == ".xml");
        format = xml ? NetFormat::Pnml : NetFormat::Net;
    }
    const std::string text = read_file(path);
    return format == NetFormat::Pnml ? parse_pnml(text) : parse_net(text);
}

// ---------------------------------------------------------------------------
// Equation files, one equation per line:  # R |- p5 = p4
//                                          # A |- a1 = p2 + p1
// A purely numeric term is a constant and must then be the only term.
// ---------------------------------------------------------------------------

inline std::vector<TaggedEquation> parse_equations(std::string_view text) {
    std::vector<TaggedEquation> out;
    const auto lines = detail::split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t line = i + 1;
        std::string_view l = detail::trim(lines[i]);
        if (l.empty()) continue;
        if (l[0] != '#') throw SyntaxError(line, "equation lines start with '#'");
        l = detail::trim(l.substr(1));
        if (l.empty()) throw SyntaxError(line, "missing tag");
        TaggedEquation eq;
        if (l[0] == 'R')
            eq.tag = EquationTag::Redundancy;
        else if (l[0] == 'A')
            eq.tag = EquationTag::Agglomeration;
        else
            throw SyntaxError(line, "unknown tag '" + std::string(1, l[0]) + "'");
        l = detail::trim(l.substr(1));
        if (l.substr(0, 2) != "|-") throw SyntaxError(line, "expected '|-'");
        l = l.substr(2);
        const auto eqpos = l.find('=');
        if (eqpos == std::string_view::npos) throw SyntaxError(line, "expected '='");
        eq.removed = std::string(detail::trim(l.substr(0, eqpos)));
        if (!detail::valid_name(eq.removed)) throw SyntaxError(line, "bad variable '" + eq.removed + "'");
        std::string_view rhs = l.substr(eqpos + 1);
        std::vector<std::string_view> terms;
        std::size_t start = 0;
        while (true) {
            auto plus = rhs.find('+', start);
            terms.push_back(detail::trim(rhs.substr(start, plus == std::string_view::npos ? rhs.npos : plus - start)));
            if (plus == std::string_view::npos) break;
            start = plus + 1;
        }
        for (auto t : terms) {
            if (t.empty()) throw SyntaxError(line, "empty term");
            if (detail::is_digits(t)) {
                std::uint64_t k = 0;
                if (terms.size() != 1) throw SyntaxError(line, "a constant must be the only term");
                if (!detail::parse_nat(t, k) || k > UINT32_MAX) throw SyntaxError(line, "constant out of range");
                eq.constant = static_cast<Tokens>(k);
            } else {
                if (!detail::valid_name(t)) throw SyntaxError(line, "bad term '" + std::string(t) + "'");
                eq.terms.emplace_back(t);
            }
        }
        try {
            eq.validate();
        } catch (const SyntaxError& e) {
            throw SyntaxError(line, e.what());
        }
        out.push_back(std::move(eq));
    }
    return out;
}

inline std::string write_equation(const TaggedEquation& eq) {
    std::string s = "# ";
    s += tag_char(eq.tag);
    s += " |- " + eq.removed + " = ";
    if (eq.is_constant()) return s + std::to_string(*eq.constant);
    for (std::size_t i = 0; i < eq.terms.size(); ++i) s += (i ? " + " : "") + eq.terms[i];
    return s;
}

inline std::string write_equations(const std::vector<TaggedEquation>& eqs) {
    std::string s;
    for (const auto& e : eqs) s += write_equation(e) + '\n';
    return s;
}

// ---------------------------------------------------------------------------
// Concurrency matrices. Optional header `# order: p q r`, then one row per
// place; row i holds i+1 symbols from {0,1,.}. A run may be written
// `<symbol>(<count>)`; the writer does so for maximal runs of length >= 4.
// ---------------------------------------------------------------------------

struct MatrixDocument {
    std::vector<std::string> place_order;  // empty when the text had no header
    std::vector<std::vector<Cell>> rows;

    bool operator==(const MatrixDocument&) const = default;
};

inline MatrixDocument parse_matrix(std::string_view text) {
    MatrixDocument doc;
    bool header = false;
    const auto lines = detail::split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        std::string_view l = detail::trim(lines[i]);
        if (l.empty()) continue;
        if (l[0] == '#') {
            l = detail::trim(l.substr(1));
            if (l.substr(0, 6) == "order:") {
                if (header || !doc.rows.empty()) throw SyntaxError(i + 1, "misplaced order header");
                header = true;
                for (auto n : detail::split_ws(l.substr(6))) doc.place_order.emplace_back(n);
            }
            continue;
        }
        const std::size_t row = doc.rows.size();
        std::vector<Cell> cells;
        Cell last = Cell::Unknown;
        bool have_last = false;
        for (std::size_t k = 0; k < l.size(); ++k) {
            const char c = l[k];
            if (c == ' ' || c == '\t' || c == '\r') continue;
            if (c == '0' || c == '1' || c == '.') {
                last = c == '0' ? Cell::Zero : c == '1' ? Cell::One : Cell::Unknown;
                have_last = true;
                cells.push_back(last);
            } else if (c == '(') {
                const auto close = l.find(')', k);
                std::uint64_t n = 0;
                if (!have_last || close == std::string_view::npos || !detail::parse_nat(l.substr(k + 1, close - k - 1), n) ||
                    n == 0)
                    throw SyntaxError(i + 1, "bad run length in row " + std::to_string(row));
                if (n - 1 > l.size() + row) throw RaggedRow(row, row + 1, static_cast<std::size_t>(n));
                cells.insert(cells.end(), static_cast<std::size_t>(n - 1), last);
                have_last = false;
                k = close;
            } else {
                throw SyntaxError(i + 1, "unexpected character '" + std::string(1, c) + "'");
            }
        }
        if (cells.size() != row + 1) throw RaggedRow(row, row + 1, cells.size());
        doc.rows.push_back(std::move(cells));
    }
    if (header && doc.place_order.size() != doc.rows.size())
        throw SyntaxError(0, "order header names " + std::to_string(doc.place_order.size()) + " places but " +
                                 std::to_string(doc.rows.size()) + " rows follow");
    return doc;
}

inline std::string write_matrix(const MatrixDocument& doc) {
    std::string s;
    if (!doc.place_order.empty()) {
        s += "# order:";
        for (const auto& p : doc.place_order) s += ' ' + p;
        s += '\n';
    }
    for (const auto& row : doc.rows) {
        for (std::size_t i = 0; i < row.size();) {
            std::size_t j = i;
            while (j < row.size() && row[j] == row[i]) ++j;
            const std::size_t run = j - i;
            if (run >= 4)
                s += std::string(1, to_char(row[i])) + "(" + std::to_string(run) + ")";
            else
                s += std::string(run, to_char(row[i]));
            i = j;
        }
        s += '\n';
    }
    return s;
}

inline MatrixDocument to_document(const ConcurrencyMatrix& m) {
    MatrixDocument doc;
    doc.place_order = m.order();
    for (std::size_t i = 0; i < m.size(); ++i) {
        std::vector<Cell> row;
        for (std::size_t j = 0; j <= i; ++j) row.push_back(m.at(i, j));
        doc.rows.push_back(std::move(row));
    }
    return doc;
}

inline ConcurrencyMatrix to_matrix(const MatrixDocument& doc) {
    if (doc.place_order.size() != doc.rows.size()) throw SyntaxError(0, "matrix document has no place order");
    ConcurrencyMatrix m(doc.place_order, Cell::Unknown);
    for (std::size_t i = 0; i < doc.rows.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j) m.set(i, j, doc.rows[i][j]);
    return m;
}

// ---------------------------------------------------------------------------
// Marking queries: whitespace separated `name=nat`; omitted places are 0.
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<std::pair<std::string, Tokens>> parse_assignments(std::string_view text) {
    std::vector<std::pair<std::string, Tokens>> out;
    std::set<std::string> seen;
    std::size_t line = 0;
    for (auto l : split_lines(text)) {
        ++line;
        if (auto hash = l.find('#'); hash != std::string_view::npos) l = l.substr(0, hash);
        for (auto tok : split_ws(l)) {
            const auto eq = tok.find('=');
            if (eq == std::string_view::npos) throw SyntaxError(line, "expected name=value, got '" + std::string(tok) + "'");
            const std::string name(tok.substr(0, eq));
            std::uint64_t n = 0;
            if (!valid_name(name)) throw SyntaxError(line, "bad place name '" + name + "'");
            if (!parse_nat(tok.substr(eq + 1), n) || n > UINT32_MAX)
                throw SyntaxError(line, "bad value in '" + std::string(tok) + "'");
            if (!seen.insert(name).second) throw DuplicateAssignment(name);
            out.emplace_back(name, static_cast<Tokens>(n));
        }
    }
    return out;
}

}  // namespace detail

inline Marking parse_marking_query(std::string_view text) {
    Marking m;
    for (const auto& [p, n] : detail::parse_assignments(text)) m.set(p, n);
    return m;
}

// Same, rejecting names that are not places of `net`.
inline Marking parse_marking_query(std::string_view text, const PetriNet& net) {
    Marking m;
    for (const auto& [p, n] : detail::parse_assignments(text)) {
        if (!net.find_place(p)) throw UnknownPlace(p);
        m.set(p, n);
    }
    return m;
}

inline std::string write_marking_query(const Marking& m) {
    std::string s;
    for (const auto& [p, n] : m.entries()) s += (s.empty() ? "" : " ") + p + "=" + std::to_string(n);
    return s;
}

}  // namespace tfgkit
