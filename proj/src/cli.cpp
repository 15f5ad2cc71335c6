#include "hamilton/cli.hpp"

#include "hamilton/parser.hpp"
#include "hamilton/specialization.hpp"
#include "hamilton/structure.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <sstream>

namespace hamilton {

namespace {

const char* kGrammar =
    "expression grammar:\n"
    "  expr    := term (('+' | '-') term)*\n"
    "  term    := unary (('*' | '.')? unary)*      adjacency multiplies\n"
    "  unary   := '-' unary | power\n"
    "  power   := postfix ('^' integer)?\n"
    "  postfix := primary (\"'\")*                   postfix adjoint\n"
    "  primary := scalar | 'a' | 'b' | 'w' | '(' expr ')' | '()'\n"
    "  scalar  := integer ('/' integer)?\n"
    "polynomial literals for --p, --q and r arguments use the variable t,\n"
    "e.g. \"t^2-t\". Start an expression argument with -- if it begins\n"
    "with '-', e.g.: eval -- \"-w^2+4\".";

std::string json_poly(const CenterPoly& f) {
    std::string out = "[";
    if (!f.is_zero())
        for (long long i = 0; i <= f.deg().value(); ++i) {
            if (i) out += ",";
            out += "\"" + f.coeff(i).to_string() + "\"";
        }
    return out + "]";
}

std::string json_bool(bool b) { return b ? "true" : "false"; }

std::string json_basic_vector(const BasicVector& v) {
    return "{\"side\":\"" + side_name(v.side) + "\",\"lambda\":\"" + v.lambda.to_string() +
           "\",\"mu\":\"" + v.mu.to_string() + "\"}";
}

struct Ctx {
    FieldDescriptor field = FieldDescriptor::rationals();
    ParamsPtr P;
    std::string p_str, q_str; // so batch lines inherit the rule books
    bool json = false;
    int budget = 10000;
    long long bound = 10;
    int depth = 0;
};

HamiltonElement eval_expr(const Ctx& ctx, const std::string& s) {
    return evaluate(parse(s, ctx.field), ctx.P);
}

void print_poly(const Ctx& ctx, std::ostream& out, const char* key, const CenterPoly& v,
                const std::string& var) {
    if (ctx.json)
        out << "{\"" << key << "\":" << json_poly(v) << "}\n";
    else
        out << v.to_string(var) << "\n";
}

void print_bool(const Ctx& ctx, std::ostream& out, const char* key, bool v) {
    if (ctx.json)
        out << "{\"" << key << "\":" << json_bool(v) << "}\n";
    else
        out << (v ? "true" : "false") << "\n";
}

void print_element(const Ctx& ctx, std::ostream& out, const HamiltonElement& x) {
    out << (ctx.json ? x.to_json() : x.to_string()) << "\n";
}

void cmd_gram(const Ctx& ctx, std::ostream& out) {
    std::array<HamiltonElement, 4> e = {
        HamiltonElement::one(ctx.P), HamiltonElement::gen_a(ctx.P),
        HamiltonElement::gen_b(ctx.P),
        HamiltonElement::gen_a(ctx.P) * HamiltonElement::gen_b(ctx.P)};
    CenterPoly det = gram_det(e);
    if (ctx.json) {
        out << "{\"matrix\":[";
        for (int i = 0; i < 4; ++i) {
            if (i) out << ",";
            out << "[";
            for (int j = 0; j < 4; ++j) {
                if (j) out << ",";
                out << json_poly(inner(e[static_cast<size_t>(i)], e[static_cast<size_t>(j)]));
            }
            out << "]";
        }
        out << "],\"det\":" << json_poly(det) << "}\n";
        return;
    }
    for (int i = 0; i < 4; ++i) {
        out << "[";
        for (int j = 0; j < 4; ++j) {
            if (j) out << ", ";
            out << inner(e[static_cast<size_t>(i)], e[static_cast<size_t>(j)]).to_string("w");
        }
        out << "]\n";
    }
    out << "det = " << det.to_string("w") << "\n";
}

void cmd_retrace(const Ctx& ctx, std::ostream& out, const std::string& expr) {
    RetraceOutcome r = retrace(eval_expr(ctx, expr), ctx.budget);
    if (ctx.json) {
        out << "{\"success\":" << json_bool(r.success)
            << ",\"result\":" << r.result.to_json() << ",\"conjugators\":[";
        for (size_t i = 0; i < r.conjugators.size(); ++i) {
            if (i) out << ",";
            out << json_basic_vector(r.conjugators[i]);
        }
        out << "],\"zero_divisor_leading\":"
            << (r.zero_divisor_leading ? json_basic_vector(*r.zero_divisor_leading) : "null")
            << "}\n";
        return;
    }
    out << (r.success ? "success" : "failure") << "\n";
    out << "result = " << r.result.to_string() << "\n";
    if (!r.conjugators.empty()) {
        out << "conjugators =";
        for (const BasicVector& v : r.conjugators) out << " (" << v.to_string() << ")";
        out << "\n";
    }
    if (r.zero_divisor_leading)
        out << "leading zero divisor = " << r.zero_divisor_leading->to_string() << "\n";
}

void cmd_refined(const Ctx& ctx, std::ostream& out, const std::string& expr) {
    RefinedOutcome r = refined_retrace(eval_expr(ctx, expr), ctx.budget);
    if (ctx.json) {
        out << "{\"success\":" << json_bool(r.success)
            << ",\"result\":" << r.result.to_json() << ",\"conjugators\":[";
        for (size_t i = 0; i < r.conjugators.size(); ++i) {
            if (i) out << ",";
            out << r.conjugators[i].to_json();
        }
        out << "],\"witness\":" << (r.witness ? json_basic_vector(*r.witness) : "null")
            << "}\n";
        return;
    }
    out << (r.success ? "success" : "failure") << "\n";
    out << "result = " << r.result.to_string() << "\n";
    if (!r.conjugators.empty()) {
        out << "conjugators =";
        for (const UnitFactor& f : r.conjugators) out << " " << f.to_string();
        out << "\n";
    }
    if (r.witness) out << "special degenerate witness = " << r.witness->to_string() << "\n";
}

void cmd_decompose(const Ctx& ctx, std::ostream& out, const std::string& ea,
                   const std::string& eb) {
    auto [aut, gamma] =
        decompose_automorphism(eval_expr(ctx, ea), eval_expr(ctx, eb), ctx.budget);
    ReducedDecomposition d = factor_unit(gamma, ctx.budget);
    if (ctx.json) {
        out << "{\"aut\":{\"image_of_a\":" << json_basic_vector(aut.image_of_a)
            << ",\"image_of_b\":" << json_basic_vector(aut.image_of_b)
            << ",\"negative\":" << json_bool(aut.negative())
            << "},\"conjugator\":" << gamma.to_json() << ",\"factored\":" << d.to_json()
            << "}\n";
        return;
    }
    out << "basic part: " << aut.to_string() << "\n";
    out << "conjugator = " << gamma.to_string() << "\n";
    out << "factored = " << d.to_string() << "\n";
}

void cmd_invariant(const Ctx& ctx, std::ostream& out, const std::string& expr) {
    ConjClassInvariant inv = conjugacy_invariant(eval_expr(ctx, expr), ctx.budget);
    if (ctx.json) {
        out << "{\"kind\":\""
            << (inv.kind == ConjClassInvariant::Kind::Basic ? "basic" : "sharp")
            << "\",\"minimal_poly\":" << json_poly(inv.minimal_poly)
            << ",\"attached\":" << json_basic_vector(inv.attached) << ",\"shift\":"
            << (inv.shift ? "\"" + inv.shift->to_string() + "\"" : "null")
            << ",\"modular_norm\":"
            << (inv.modular_norm ? json_poly(*inv.modular_norm) : "null") << "}\n";
        return;
    }
    out << inv.to_string() << "\n";
}

void cmd_specialize(const Ctx& ctx, std::ostream& out, const std::string& rs) {
    SpecializedAlgebra spec(ctx.P, parse_poly(rs, ctx.field));
    if (ctx.json) {
        out << "{\"r\":" << json_poly(spec.residue().modulus())
            << ",\"divides_lambda\":" << json_bool(spec.r_divides_lambda())
            << ",\"gram_det\":" << json_poly(spec.gram_det()) << "}\n";
        return;
    }
    out << "r = " << spec.residue().modulus().to_string("t") << "\n";
    out << "r divides lambda: " << (spec.r_divides_lambda() ? "true" : "false") << "\n";
    out << "gram det = " << spec.residue().to_string(spec.gram_det()) << "\n";
}

void cmd_radical(const Ctx& ctx, std::ostream& out, const std::string& rs) {
    SpecializedAlgebra spec(ctx.P, parse_poly(rs, ctx.field));
    RadicalReport rep = radical_report(spec);
    if (ctx.json) {
        out << rep.to_json(spec) << "\n";
        return;
    }
    out << "dim radical = " << rep.dim_radical << "\n";
    out << "dim norm radical = " << rep.dim_norm_radical << "\n";
    for (const SpecElement& u : rep.basis) out << "  " << spec.to_string(u) << "\n";
}

void cmd_max_ideals(const Ctx& ctx, std::ostream& out, const std::string& rs) {
    CenterPoly r = parse_poly(rs, ctx.field);
    SpecializedAlgebra spec(ctx.P, r);
    MaximalIdealReport rep = maximal_ideals_above(ctx.P, r);
    if (ctx.json) {
        out << rep.to_json(spec) << "\n";
        return;
    }
    out << "count = " << rep.count << "\n";
    for (size_t i = 0; i < rep.ideals.size(); ++i) {
        out << "ideal " << i + 1 << ":\n";
        for (const SpecElement& v : rep.ideals[i]) out << "  " << spec.to_string(v) << "\n";
    }
}

void cmd_split_witness(const Ctx& ctx, std::ostream& out, const std::string& rs) {
    SpecializedAlgebra spec(ctx.P, parse_poly(rs, ctx.field));
    SplitSearchResult res = split_witness(spec, ctx.bound);
    if (ctx.json) {
        out << "{\"witness\":" << (res.witness ? spec.to_json(*res.witness) : "null")
            << ",\"unknown\":" << json_bool(res.unknown) << "}\n";
        return;
    }
    if (res.witness)
        out << "witness = " << spec.to_string(*res.witness) << "\n";
    else
        out << "no witness up to bound " << ctx.bound << " (unknown)\n";
}

void cmd_laffey(const Ctx& ctx, std::ostream& out) {
    auto pq = laffey_idempotents(ctx.field);
    if (ctx.json) {
        if (!pq) {
            out << "{\"possible\":false}\n";
            return;
        }
        auto mat = [](const FieldMat2& m) {
            std::string s = "[";
            for (int r = 0; r < 2; ++r) {
                if (r) s += ",";
                s += "[\"" + m.at(r, 0).to_string() + "\",\"" + m.at(r, 1).to_string() +
                     "\"]";
            }
            return s + "]";
        };
        out << "{\"possible\":true,\"p\":" << mat(pq->first) << ",\"q\":" << mat(pq->second)
            << "}\n";
        return;
    }
    if (!pq) {
        out << "no generating idempotent pair exists over " << ctx.field.to_string() << "\n";
        return;
    }
    out << "P = " << pq->first.to_string() << "\n";
    out << "Q = " << pq->second.to_string() << "\n";
}

void cmd_word_mul(const Ctx& ctx, std::ostream& out, const std::string& e1,
                  const std::string& e2) {
    WordExpr prod = word_mul(evaluate_word(parse(e1, ctx.field), ctx.P),
                             evaluate_word(parse(e2, ctx.field), ctx.P));
    if (ctx.json) {
        out << "{\"product\":\"" << prod.to_string() << "\",\"terms\":[";
        bool first = true;
        for (auto it = prod.terms().rbegin(); it != prod.terms().rend(); ++it) {
            if (!first) out << ",";
            first = false;
            out << "[\"" << it->first << "\",\"" << it->second.to_string() << "\"]";
        }
        out << "]}\n";
        return;
    }
    out << prod.to_string() << "\n";
}

void cmd_convert(const Ctx& ctx, std::ostream& out, const std::string& dir,
                 const std::string& e1) {
    ExprPtr e = parse(e1, ctx.field);
    if (dir == "word") {
        WordExpr w = evaluate_word(e, ctx.P);
        if (ctx.json)
            out << "{\"word\":\"" << w.to_string() << "\"}\n";
        else
            out << w.to_string() << "\n";
        return;
    }
    print_element(ctx, out, evaluate(e, ctx.P));
}

int run_line(const Ctx& base, const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

// Batch file: one command line per row, '#' comments, blank lines skipped.
// An optional opening let-list ("let name = expression") defines textual
// substitutions available as $name in later expressions of the same file.
int cmd_batch(const Ctx& ctx, std::ostream& out, std::ostream& err,
              const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        err << "cannot open batch file: " << path << "\n";
        return 1;
    }
    std::vector<std::pair<std::string, std::string>> lets;
    bool lets_open = true;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string trimmed = line;
        size_t b = trimmed.find_first_not_of(" \t\r");
        trimmed = b == std::string::npos ? "" : trimmed.substr(b);
        if (trimmed.empty() || trimmed[0] == '#') continue;
        if (lets_open && trimmed.rfind("let ", 0) == 0) {
            size_t eq = trimmed.find('=');
            if (eq == std::string::npos) {
                err << path << ":" << lineno << ": malformed let line\n";
                return 2;
            }
            std::string name = trimmed.substr(4, eq - 4);
            name.erase(name.find_last_not_of(" \t") + 1);
            if (name.empty()) {
                err << path << ":" << lineno << ": malformed let line\n";
                return 2;
            }
            lets.emplace_back(name, trimmed.substr(eq + 1));
            continue;
        }
        lets_open = false;

        // shell-like splitting with quotes
        std::vector<std::string> argv;
        std::string cur;
        bool in_str = false, any = false;
        char quote = 0;
        for (char c : trimmed) {
            if (in_str) {
                if (c == quote)
                    in_str = false;
                else
                    cur += c;
            } else if (c == '"' || c == '\'') {
                in_str = true;
                any = true;
                quote = c;
            } else if (c == ' ' || c == '\t') {
                if (any || !cur.empty()) argv.push_back(cur);
                cur.clear();
                any = false;
            } else {
                cur += c;
            }
        }
        if (in_str) {
            err << path << ":" << lineno << ": unterminated quote\n";
            return 2;
        }
        if (any || !cur.empty()) argv.push_back(cur);

        for (std::string& a : argv)
            for (const auto& [name, body] : lets)
                for (size_t at; (at = a.find("$" + name)) != std::string::npos;)
                    a = a.substr(0, at) + "(" + body + ")" + a.substr(at + name.size() + 1);

        int rc = run_line(ctx, argv, out, err);
        if (rc != 0) {
            err << path << ":" << lineno << ": command failed with status " << rc << "\n";
            return rc;
        }
    }
    return 0;
}

int run_line(const Ctx& base, const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
    CLI::App app{"exact computer algebra for free Hamilton algebras"};
    app.footer(kGrammar);

    std::string field_spec = base.field.is_rationals()
                                 ? "q"
                                 : "fp:" + base.field.characteristic().str();
    std::string p_str = base.p_str, q_str = base.q_str,
                format = base.json ? "json" : "text";
    int budget = base.budget;
    long long bound = base.bound;
    app.add_option("--field", field_spec, "base field: q or fp:<prime>")
        ->capture_default_str();
    app.add_option("--p", p_str, "left rule book, monic quadratic in t");
    app.add_option("--q", q_str, "right rule book, monic quadratic in t");
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    app.add_option("--budget", budget, "step budget for iterative algorithms")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    app.add_option("--bound", bound, "search bound for split-witness")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();

    std::string e1, e2, rs, dir, path;
    struct Sub {
        CLI::App* app;
        bool needs_params;
    };
    std::vector<std::pair<std::string, Sub>> subs;
    auto add = [&](const std::string& name, const std::string& desc, int exprs,
                   bool needs_params = true) {
        CLI::App* s = app.add_subcommand(name, desc);
        if (exprs >= 1) s->add_option("expr", e1, "expression")->required();
        if (exprs >= 2) s->add_option("expr2", e2, "second expression")->required();
        subs.emplace_back(name, Sub{s, needs_params});
        return s;
    };

    add("eval", "evaluate an expression in the (1, a, b, ab) coordinates", 1);
    add("norm", "N(x) = x x*", 1);
    add("trace", "tr(x) = x + x*", 1);
    add("star", "the adjunction x*", 1);
    add("inner", "<x, y> = x y* + y x*", 2);
    add("is-unit", "unit test", 1);
    add("invert", "inverse of a unit", 1);
    add("is-zerodivisor", "zero-divisor test", 1);
    add("is-quadratic", "is x quadratic over the base field", 1);
    add("lambda", "the fundamental polynomial of (p, q)", 0);
    add("gram", "Gram matrix of (1, a, b, ab) and its determinant", 0);
    add("retrace", "plain retracing of a quadratic element", 1);
    add("refined-retrace", "retracing with semi-basic steps", 1);
    add("factor-unit", "reduced decomposition of a unit", 1);
    add("decompose-aut", "split an automorphism given images of a and b", 2);
    add("conj-invariant", "conjugacy class invariant", 1);
    {
        CLI::App* s = app.add_subcommand("specialize", "study W mod an irreducible r(w)");
        s->add_option("r", rs, "monic irreducible polynomial in t")->required();
        subs.emplace_back("specialize", Sub{s, true});
    }
    {
        CLI::App* s = app.add_subcommand("radical", "radical dimensions when r | lambda");
        s->add_option("r", rs, "monic irreducible divisor of lambda")->required();
        subs.emplace_back("radical", Sub{s, true});
    }
    {
        CLI::App* s = app.add_subcommand("max-ideals", "maximal ideals above r | lambda");
        s->add_option("r", rs, "monic irreducible divisor of lambda")->required();
        subs.emplace_back("max-ideals", Sub{s, true});
    }
    {
        CLI::App* s =
            app.add_subcommand("split-witness", "isotropic vector search mod r");
        s->add_option("r", rs, "monic irreducible polynomial in t")->required();
        subs.emplace_back("split-witness", Sub{s, true});
    }
    add("laffey", "generating idempotent pair of Mat2 over the base field", 0, false);
    add("word-mul", "product in the alternating-word basis", 2);
    {
        CLI::App* s = app.add_subcommand("convert", "re-render between bases");
        s->add_option("target", dir, "word or omega")
            ->required()
            ->check(CLI::IsMember({"word", "omega"}));
        s->add_option("expr", e1, "expression")->required();
        subs.emplace_back("convert", Sub{s, true});
    }
    {
        CLI::App* s = app.add_subcommand("batch", "run commands from a file");
        s->add_option("file", path, "batch file, one command line per row")->required();
        subs.emplace_back("batch", Sub{s, false});
    }
    app.require_subcommand(1);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    Ctx ctx = base;
    ctx.json = format == "json";
    ctx.budget = budget;
    ctx.bound = bound;
    ctx.p_str = p_str;
    ctx.q_str = q_str;

    std::string name;
    bool needs_params = false;
    for (const auto& [n, sub] : subs)
        if (sub.app->parsed()) {
            name = n;
            needs_params = sub.needs_params;
        }

    // configuration-stage failures are usage errors
    try {
        if (field_spec == "q") {
            ctx.field = FieldDescriptor::rationals();
        } else if (field_spec.rfind("fp:", 0) == 0) {
            ctx.field = FieldDescriptor::prime_field(Int(field_spec.substr(3)));
        } else {
            throw DomainError("field must be q or fp:<prime>, got \"" + field_spec + "\"");
        }
        if (needs_params) {
            if (p_str.empty() || q_str.empty())
                throw DomainError("this command needs --p and --q");
            ctx.P = AlgebraParams::make(parse_poly(p_str, ctx.field),
                                        parse_poly(q_str, ctx.field));
        }
    } catch (const std::exception& e) {
        err << "usage error: " << e.what() << "\n";
        err << "run with --help for the flag table and expression grammar\n";
        return 2;
    }

    try {
        if (name == "eval") {
            print_element(ctx, out, eval_expr(ctx, e1));
        } else if (name == "norm") {
            print_poly(ctx, out, "norm", norm(eval_expr(ctx, e1)), "w");
        } else if (name == "trace") {
            print_poly(ctx, out, "trace", trace(eval_expr(ctx, e1)), "w");
        } else if (name == "star") {
            print_element(ctx, out, star(eval_expr(ctx, e1)));
        } else if (name == "inner") {
            print_poly(ctx, out, "inner", inner(eval_expr(ctx, e1), eval_expr(ctx, e2)),
                       "w");
        } else if (name == "is-unit") {
            print_bool(ctx, out, "is_unit", is_unit(eval_expr(ctx, e1)));
        } else if (name == "invert") {
            print_element(ctx, out, invert(eval_expr(ctx, e1)));
        } else if (name == "is-zerodivisor") {
            print_bool(ctx, out, "is_zerodivisor", is_zero_divisor(eval_expr(ctx, e1)));
        } else if (name == "is-quadratic") {
            print_bool(ctx, out, "is_quadratic", is_quadratic(eval_expr(ctx, e1)));
        } else if (name == "lambda") {
            print_poly(ctx, out, "lambda", ctx.P->lambda_poly(), "t");
        } else if (name == "gram") {
            cmd_gram(ctx, out);
        } else if (name == "retrace") {
            cmd_retrace(ctx, out, e1);
        } else if (name == "refined-retrace") {
            cmd_refined(ctx, out, e1);
        } else if (name == "factor-unit") {
            ReducedDecomposition d = factor_unit(eval_expr(ctx, e1), ctx.budget);
            out << (ctx.json ? d.to_json() : d.to_string()) << "\n";
        } else if (name == "decompose-aut") {
            cmd_decompose(ctx, out, e1, e2);
        } else if (name == "conj-invariant") {
            cmd_invariant(ctx, out, e1);
        } else if (name == "specialize") {
            cmd_specialize(ctx, out, rs);
        } else if (name == "radical") {
            cmd_radical(ctx, out, rs);
        } else if (name == "max-ideals") {
            cmd_max_ideals(ctx, out, rs);
        } else if (name == "split-witness") {
            cmd_split_witness(ctx, out, rs);
        } else if (name == "laffey") {
            cmd_laffey(ctx, out);
        } else if (name == "word-mul") {
            cmd_word_mul(ctx, out, e1, e2);
        } else if (name == "convert") {
            cmd_convert(ctx, out, dir, e1);
        } else if (name == "batch") {
            if (ctx.depth >= 8) {
                err << "error: batch files nested too deeply\n";
                return 1;
            }
            ++ctx.depth;
            return cmd_batch(ctx, out, err, path);
        }
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    return run_line(Ctx{}, args, out, err);
}

} // namespace hamilton
