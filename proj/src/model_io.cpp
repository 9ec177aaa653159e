#include "mcsp/model_io.hpp"

#include "mcsp/error.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace mcsp {

namespace {

bool plain_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::string sanitize_name(const std::string& name) {
    bool ok = !name.empty() && !std::isdigit(static_cast<unsigned char>(name[0]));
    for (char c : name) ok = ok && plain_name_char(c);
    if (ok) return name;
    std::string out;
    for (char c : name) {
        if (plain_name_char(c)) {
            out.push_back(c);
        } else {
            char buf[8];
            std::snprintf(buf, sizeof buf, "_x%02X", static_cast<unsigned char>(c));
            out += buf;
        }
    }
    if (out.empty() || std::isdigit(static_cast<unsigned char>(out[0]))) out.insert(0, 1, '_');
    return out;
}

std::string format_coeff(double value) {
    if (value == std::floor(value) && std::abs(value) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.0f", value);
        return buf;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void write_terms(std::ostream& out, const std::vector<IpTerm>& terms,
                 const std::vector<std::string>& names) {
    int line_len = 0;
    bool first = true;
    for (const auto& term : terms) {
        std::string piece;
        const double c = term.coeff;
        const double mag = std::abs(c);
        if (first) {
            piece = c < 0 ? "- " : "";
        } else {
            piece = c < 0 ? " - " : " + ";
        }
        if (mag != 1.0) piece += format_coeff(mag) + " ";
        piece += names[static_cast<std::size_t>(term.var)];
        if (line_len + static_cast<int>(piece.size()) > 72) {
            out << "\n   ";
            line_len = 3;
            if (!first && piece.front() == ' ') piece.erase(0, 1);
        }
        out << piece;
        line_len += static_cast<int>(piece.size());
        first = false;
    }
}

void export_lp(const IpModel& model, std::ostream& out) {
    std::vector<std::string> names;
    names.reserve(model.variables.size());
    for (const auto& v : model.variables) names.push_back(sanitize_name(v.name));

    out << "\\ MCSP integer program\n";
    out << "Minimize\n obj: ";
    {
        std::vector<IpTerm> obj;
        for (int j = 0; j < model.num_vars(); ++j)
            if (model.variables[static_cast<std::size_t>(j)].objective != 0.0)
                obj.push_back({j, model.variables[static_cast<std::size_t>(j)].objective});
        write_terms(out, obj, names);
    }
    out << "\nSubject To\n";
    for (const auto& con : model.constraints) {
        out << ' ' << sanitize_name(con.name) << ": ";
        write_terms(out, con.terms, names);
        out << " = " << format_coeff(con.rhs) << "\n";
    }

    bool any_bounds = false;
    for (const auto& v : model.variables)
        if (!v.is_integer && (v.lower != 0.0 || v.upper != 1.0)) any_bounds = true;
    if (any_bounds) {
        out << "Bounds\n";
        for (const auto& v : model.variables)
            if (!v.is_integer && (v.lower != 0.0 || v.upper != 1.0))
                out << ' ' << format_coeff(v.lower) << " <= " << sanitize_name(v.name)
                    << " <= " << format_coeff(v.upper) << "\n";
    }

    bool any_binary = false;
    for (const auto& v : model.variables) any_binary = any_binary || v.is_integer;
    if (any_binary) {
        out << "Binaries\n";
        int line_len = 0;
        for (std::size_t j = 0; j < names.size(); ++j) {
            if (!model.variables[j].is_integer) continue;
            if (line_len + static_cast<int>(names[j].size()) + 1 > 72) {
                out << "\n";
                line_len = 0;
            }
            out << ' ' << names[j];
            line_len += static_cast<int>(names[j].size()) + 1;
        }
        out << "\n";
    }
    out << "End\n";
}

// Classic fixed MPS: names are limited to 8 characters, so variables and
// rows get synthetic names in model order (README documents the mapping).
void export_mps(const IpModel& model, std::ostream& out) {
    auto var_name = [](int j) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "V%07d", j + 1);
        return std::string(buf);
    };
    auto row_name = [](int r) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "R%07d", r + 1);
        return std::string(buf);
    };
    auto pad = [](const std::string& s, std::size_t width) {
        std::string t = s;
        if (t.size() < width) t.append(width - t.size(), ' ');
        return t;
    };

    out << "NAME          MCSP\n";
    out << "ROWS\n";
    out << " N  COST\n";
    for (int r = 0; r < model.num_constraints(); ++r) out << " E  " << row_name(r) << "\n";

    // column-major term lists
    std::vector<std::vector<IpTerm>> by_col(model.variables.size());
    for (int r = 0; r < model.num_constraints(); ++r)
        for (const auto& term : model.constraints[static_cast<std::size_t>(r)].terms)
            by_col[static_cast<std::size_t>(term.var)].push_back({r, term.coeff});

    out << "COLUMNS\n";
    for (int j = 0; j < model.num_vars(); ++j) {
        const auto& v = model.variables[static_cast<std::size_t>(j)];
        if (v.objective != 0.0)
            out << "    " << pad(var_name(j), 10) << pad("COST", 10)
                << format_coeff(v.objective) << "\n";
        for (const auto& term : by_col[static_cast<std::size_t>(j)])
            out << "    " << pad(var_name(j), 10) << pad(row_name(term.var), 10)
                << format_coeff(term.coeff) << "\n";
    }

    out << "RHS\n";
    for (int r = 0; r < model.num_constraints(); ++r) {
        const double rhs = model.constraints[static_cast<std::size_t>(r)].rhs;
        if (rhs != 0.0)
            out << "    " << pad("RHS", 10) << pad(row_name(r), 10) << format_coeff(rhs) << "\n";
    }

    out << "BOUNDS\n";
    for (int j = 0; j < model.num_vars(); ++j) {
        const auto& v = model.variables[static_cast<std::size_t>(j)];
        if (v.is_integer) {
            out << " BV " << pad("BND", 10) << var_name(j) << "\n";
        } else {
            out << " LO " << pad("BND", 10) << pad(var_name(j), 10) << format_coeff(v.lower) << "\n";
            out << " UP " << pad("BND", 10) << pad(var_name(j), 10) << format_coeff(v.upper) << "\n";
        }
    }
    out << "ENDATA\n";
}

// --- LP reader ---------------------------------------------------------

struct Token {
    enum Kind { name, number, plus, minus, relation, colon, end } kind = end;
    std::string text;
    double value = 0.0;
};

class LpLexer {
  public:
    explicit LpLexer(std::istream& in) {
        std::ostringstream buf;
        buf << in.rdbuf();
        text_ = buf.str();
    }

    Token next() {
        skip();
        if (pos_ >= text_.size()) return {};
        const char c = text_[pos_];
        if (c == '+') {
            ++pos_;
            return {Token::plus, "+"};
        }
        if (c == '-') {
            ++pos_;
            return {Token::minus, "-"};
        }
        if (c == ':') {
            ++pos_;
            return {Token::colon, ":"};
        }
        if (c == '<' || c == '>' || c == '=') {
            std::string rel(1, c);
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '=' || text_[pos_] == '<' || text_[pos_] == '>'))
                rel.push_back(text_[pos_++]);
            return {Token::relation, rel};
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t used = 0;
            const double v = std::stod(text_.substr(pos_), &used);
            Token t{Token::number, text_.substr(pos_, used), v};
            pos_ += used;
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t end = pos_;
            while (end < text_.size() && plain_name_char(text_[end])) ++end;
            Token t{Token::name, text_.substr(pos_, end - pos_)};
            pos_ = end;
            return t;
        }
        throw Error(ErrorKind::parse_error, std::string("unexpected character '") + c + "' in LP file");
    }

    Token peek() {
        const auto save = pos_;
        Token t = next();
        pos_ = save;
        return t;
    }

  private:
    void skip() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '\\') { // comment to end of line
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    std::string text_;
    std::size_t pos_ = 0;
};

bool iequal(const std::string& a, const char* b) {
    std::size_t i = 0;
    for (; i < a.size() && b[i]; ++i)
        if (std::tolower(static_cast<unsigned char>(a[i])) != std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    return i == a.size() && b[i] == '\0';
}

enum class Section { objective, constraints, bounds, binaries, done };

} // namespace

void export_model(const IpModel& model, ModelFormat format, std::ostream& out) {
    if (format == ModelFormat::lp)
        export_lp(model, out);
    else
        export_mps(model, out);
    if (!out) throw Error(ErrorKind::io_error, "model export stream failure");
}

void export_model_file(const IpModel& model, ModelFormat format,
                       const std::filesystem::path& file) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw Error(ErrorKind::io_error, "cannot open " + file.string() + " for writing");
    export_model(model, format, out);
}

IpModel import_lp(std::istream& in) {
    LpLexer lexer(in);
    IpModel model;
    std::unordered_map<std::string, int> var_ids;

    auto var_id = [&](const std::string& name) {
        auto it = var_ids.find(name);
        if (it != var_ids.end()) return it->second;
        const int id = model.num_vars();
        IpVariable v;
        v.name = name;
        v.lower = 0.0;
        v.upper = 1.0;
        v.is_integer = false;
        v.objective = 0.0;
        model.variables.push_back(std::move(v));
        var_ids.emplace(name, id);
        return id;
    };

    Token tok = lexer.next();
    if (tok.kind != Token::name || !(iequal(tok.text, "minimize") || iequal(tok.text, "min")))
        throw Error(ErrorKind::parse_error, "LP file must start with Minimize");

    Section section = Section::objective;
    // terms being accumulated for the current row
    std::vector<IpTerm> terms;
    std::string row_name;
    bool row_named = false;

    auto is_keyword = [&](const Token& t, Section& out_section) {
        if (t.kind != Token::name) return false;
        if (iequal(t.text, "subject") || iequal(t.text, "st") || iequal(t.text, "s")) {
            out_section = Section::constraints;
            return true;
        }
        if (iequal(t.text, "bounds") || iequal(t.text, "bound")) {
            out_section = Section::bounds;
            return true;
        }
        if (iequal(t.text, "binaries") || iequal(t.text, "binary") || iequal(t.text, "bin")) {
            out_section = Section::binaries;
            return true;
        }
        if (iequal(t.text, "end")) {
            out_section = Section::done;
            return true;
        }
        if (iequal(t.text, "generals") || iequal(t.text, "general") || iequal(t.text, "gen") ||
            iequal(t.text, "maximize") || iequal(t.text, "max"))
            throw Error(ErrorKind::parse_error, "unsupported LP section: " + t.text);
        return false;
    };

    auto consume_section_tail = [&](Section s) {
        if (s != Section::constraints) return;
        // swallow "to" after "subject"
        Token t = lexer.peek();
        if (t.kind == Token::name && iequal(t.text, "to")) lexer.next();
    };

    auto flush_objective = [&]() {
        for (const auto& term : terms)
            model.variables[static_cast<std::size_t>(term.var)].objective += term.coeff;
        terms.clear();
        row_named = false;
    };

    Section pending;
    // objective + constraint parsing share the term reader
    while (section == Section::objective || section == Section::constraints) {
        Token t = lexer.next();
        if (t.kind == Token::end)
            throw Error(ErrorKind::parse_error, "unexpected end of LP file");
        if (is_keyword(t, pending)) {
            if (section == Section::objective) flush_objective();
            if (!terms.empty())
                throw Error(ErrorKind::parse_error, "constraint without relation before section " + t.text);
            consume_section_tail(pending);
            section = pending;
            continue;
        }

        double sign = 1.0;
        if (t.kind == Token::plus || t.kind == Token::minus) {
            sign = t.kind == Token::minus ? -1.0 : 1.0;
            t = lexer.next();
        }
        if (t.kind == Token::number) {
            double coeff = t.value * sign;
            Token nxt = lexer.peek();
            if (nxt.kind == Token::name) {
                lexer.next();
                terms.push_back({var_id(nxt.text), coeff});
            } else {
                throw Error(ErrorKind::parse_error, "stray number in LP row");
            }
            continue;
        }
        if (t.kind == Token::name) {
            Token nxt = lexer.peek();
            if (nxt.kind == Token::colon) {
                if (!terms.empty())
                    throw Error(ErrorKind::parse_error, "row label in the middle of an expression");
                lexer.next();
                row_name = t.text;
                row_named = true;
                continue;
            }
            terms.push_back({var_id(t.text), sign});
            continue;
        }
        if (t.kind == Token::relation) {
            if (section == Section::objective)
                throw Error(ErrorKind::parse_error, "relation in objective");
            if (t.text != "=")
                throw Error(ErrorKind::parse_error, "only equality rows are supported, got " + t.text);
            double rhs_sign = 1.0;
            Token rhs = lexer.next();
            if (rhs.kind == Token::plus || rhs.kind == Token::minus) {
                rhs_sign = rhs.kind == Token::minus ? -1.0 : 1.0;
                rhs = lexer.next();
            }
            if (rhs.kind != Token::number)
                throw Error(ErrorKind::parse_error, "missing rhs value");
            IpConstraint con;
            con.name = row_named ? row_name : "c" + std::to_string(model.num_constraints() + 1);
            con.rhs = rhs.value * rhs_sign;
            con.terms = std::move(terms);
            terms = {};
            row_named = false;
            model.constraints.push_back(std::move(con));
            continue;
        }
        throw Error(ErrorKind::parse_error, "unexpected token '" + t.text + "' in LP file");
    }

    // Bounds / Binaries / End
    while (section != Section::done) {
        if (section == Section::bounds) {
            while (true) {
                Token t = lexer.peek();
                if (t.kind == Token::end)
                    throw Error(ErrorKind::parse_error, "unexpected end of LP file in Bounds");
                Section nxt;
                if (is_keyword(t, nxt)) {
                    lexer.next();
                    consume_section_tail(nxt);
                    section = nxt;
                    break;
                }
                // forms: L <= x <= U | x <= U | x >= L | x = V | x free
                double lo = 0.0;
                bool have_lo = false;
                t = lexer.next();
                double sign = 1.0;
                if (t.kind == Token::plus || t.kind == Token::minus) {
                    sign = t.kind == Token::minus ? -1.0 : 1.0;
                    t = lexer.next();
                }
                if (t.kind == Token::number) {
                    lo = t.value * sign;
                    have_lo = true;
                    Token rel = lexer.next();
                    if (rel.kind != Token::relation || rel.text != "<=")
                        throw Error(ErrorKind::parse_error, "malformed bound row");
                    t = lexer.next();
                }
                if (t.kind != Token::name)
                    throw Error(ErrorKind::parse_error, "malformed bound row");
                const int id = var_id(t.text);
                Token follow = lexer.peek();
                if (follow.kind == Token::name && iequal(follow.text, "free")) {
                    lexer.next();
                    throw Error(ErrorKind::parse_error, "free variables are not supported");
                }
                if (have_lo) model.variables[static_cast<std::size_t>(id)].lower = lo;
                if (follow.kind == Token::relation) {
                    lexer.next();
                    double s2 = 1.0;
                    Token num = lexer.next();
                    if (num.kind == Token::plus || num.kind == Token::minus) {
                        s2 = num.kind == Token::minus ? -1.0 : 1.0;
                        num = lexer.next();
                    }
                    if (num.kind != Token::number)
                        throw Error(ErrorKind::parse_error, "malformed bound row");
                    const double v = num.value * s2;
                    if (follow.text == "<=")
                        model.variables[static_cast<std::size_t>(id)].upper = v;
                    else if (follow.text == ">=")
                        model.variables[static_cast<std::size_t>(id)].lower = v;
                    else if (follow.text == "=") {
                        model.variables[static_cast<std::size_t>(id)].lower = v;
                        model.variables[static_cast<std::size_t>(id)].upper = v;
                    } else {
                        throw Error(ErrorKind::parse_error, "malformed bound row");
                    }
                }
            }
            continue;
        }
        if (section == Section::binaries) {
            while (true) {
                Token t = lexer.next();
                if (t.kind == Token::end)
                    throw Error(ErrorKind::parse_error, "unexpected end of LP file in Binaries");
                Section nxt;
                if (is_keyword(t, nxt)) {
                    consume_section_tail(nxt);
                    section = nxt;
                    break;
                }
                if (t.kind != Token::name)
                    throw Error(ErrorKind::parse_error, "malformed Binaries section");
                auto& v = model.variables[static_cast<std::size_t>(var_id(t.text))];
                v.is_integer = true;
                v.lower = 0.0;
                v.upper = 1.0;
            }
            continue;
        }
        throw Error(ErrorKind::parse_error, "unreachable LP section state");
    }
    return model;
}

IpModel import_lp_file(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw Error(ErrorKind::io_error, "cannot open " + file.string());
    return import_lp(in);
}

} // namespace mcsp
