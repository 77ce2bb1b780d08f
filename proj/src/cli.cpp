#include "char2q/cli.hpp"

#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

namespace char2q::cli {

using json_io::Json;

namespace {

/// Failure inside a command that still produced a document.
struct Outcome {
    Json doc;
    int code = 0;
};

struct Options {
    std::string field = "laurent(gf(2))";
    std::optional<int> prec;
    std::uint64_t seed = 0;
    bool json = false;
};

FieldDescriptor resolve_field(const Options &o) {
    FieldDescriptor d = FieldDescriptor::parse(o.field);
    if (o.prec) {
        if (!d.is_laurent()) throw SyntaxError("--prec applies to Laurent fields only");
        d = FieldDescriptor::laurent(d.k, *o.prec);
    }
    return d;
}

Json header(const std::string &command, const FieldDescriptor &d, Json inputs) {
    return Json{{"command", command}, {"field", d.to_string()}, {"inputs", std::move(inputs)}};
}

// Human-readable rendering: one "path: value" line per scalar.
void flatten(const Json &j, const std::string &path, std::ostream &out) {
    if (j.is_object()) {
        for (const auto &[k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, out);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
    } else {
        out << path << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
}

// --- symbol inv ---------------------------------------------------------------

struct SymbolArgs {
    std::string kind, a, b;
    bool convention = false;
};

Outcome symbol_inv(const Options &o, const SymbolArgs &s) {
    const FieldDescriptor d = resolve_field(o);
    const SymbolKind kind = parse_symbol_kind(s.kind);
    const FieldElement a = FieldElement::parse(d, s.a), b = FieldElement::parse(d, s.b);
    if (kind == SymbolKind::AS && b.is_zero() && !s.convention)
        throw ConventionRequired("[a,0) is not an algebra; pass --convention to use [a,0) = 0");
    const SymbolValue v = make_symbol(kind, a, b);
    Json doc = header("symbol inv", d, Json{{"kind", to_string(kind)}, {"a", a.to_string()}, {"b", b.to_string()}});
    Json result{{"invariant", *v.invariant}, {"method", to_string(v.method)}};
    result["class"] = v.presentation ? v.presentation->to_string() : "0";
    doc["result"] = result;
    doc["method"] = to_string(v.method);
    return {doc, 0};
}

// --- slot -----------------------------------------------------------------------

struct SlotArgs {
    std::string a1, b1, a2, b2;
    std::string witness_file;
};

Json slot_json(const SlotResult &r) {
    Json witnesses = Json::array();
    for (const Realization &w : r.witnesses) witnesses.push_back(json_io::to_json(w));
    Json presentations = Json::array();
    for (std::size_t k = 0; k < 2; ++k)
        presentations.push_back(common_presentation(r.theorem, r.instance, r.slot, k).to_string());
    return Json{{"theorem", to_string(r.theorem)},
                {"slot", r.slot.to_string()},
                {"presentations", presentations},
                {"witnesses", witnesses},
                {"lemma", json_io::to_json(r.lemma)},
                {"instance", json_io::to_json(r.instance)}};
}

Outcome slot_command(const Options &o, Theorem t, const SlotArgs &s) {
    const FieldDescriptor d = resolve_field(o);
    const std::string command = "slot " + std::string(to_string(t));
    const bool raw = s.witness_file.empty();
    if (raw && (s.a1.empty() || s.b1.empty() || s.a2.empty() || s.b2.empty()))
        throw SyntaxError("raw mode needs --a1 --b1 --a2 --b2, or pass --witness-file");

    Json inputs;
    std::optional<SlotInstance> inst;
    if (raw) {
        const SymbolKind kind = target_kind(t);
        const Presentation p1(kind, FieldElement::parse(d, s.a1), FieldElement::parse(d, s.b1));
        const Presentation p2(kind, FieldElement::parse(d, s.a2), FieldElement::parse(d, s.b2));
        inputs = Json{{"mode", "raw"},
                      {"first", json_io::to_json(p1)},
                      {"second", json_io::to_json(p2)}};
        Json doc = header(command, d, inputs);
        const SymbolValue c1 = make_symbol(kind, p1.a(), p1.b()), c2 = make_symbol(kind, p2.a(), p2.b());
        if (!class_equal(c1, c2)) {
            doc["result"] = Json{{"error", "the two symbols lie in different classes"},
                                 {"invariants", Json::array({*c1.invariant, *c2.invariant})}};
            return {doc, 1};
        }
        // The first presentation serves as ambient, realized by its own generators.
        const Realization first{p1, Quaternion::basis(p1, 1), Quaternion::basis(p1, 2)};
        try {
            inst = SlotInstance{p1, {first, embed_presentation(p1, p2, kStandardConfig.embed)}};
        } catch (const SearchExhausted &err) {
            doc["result"] = Json{{"error", err.what()}};
            return {doc, 1};
        }
    } else {
        std::ifstream in(s.witness_file);
        if (!in) throw SyntaxError("cannot read witness file '" + s.witness_file + "'");
        Json j;
        try {
            j = Json::parse(in);
        } catch (const Json::parse_error &err) {
            throw SyntaxError("witness file is not JSON: " + std::string(err.what()));
        }
        inst = json_io::instance_from_json(d, j);
        inputs = Json{{"mode", "witness-file"}, {"instance", json_io::to_json(*inst)}};
    }

    Json doc = header(command, d, inputs);
    try {
        const SlotResult r = run_theorem(t, *inst);
        doc["result"] = slot_json(r);
        doc["report"] = json_io::to_json(r.report);
        doc["degenerate"] = r.degenerate;
        return {doc, r.report.all_passed() ? 0 : 1};
    } catch (const InvalidInstance &err) {
        doc["result"] = Json{{"error", err.what()}};
        return {doc, 1};
    }
}

// --- oracle -----------------------------------------------------------------------

struct IsotropyArgs {
    std::string kind, a, b;
    int min_exp = kStandardConfig.isotropy.min_exponent;
    int max_exp = kStandardConfig.isotropy.max_exponent;
};

Json vector_json(const Vector &v) {
    Json j = Json::array();
    for (const FieldElement &c : v) j.push_back(c.to_string());
    return j;
}

Outcome oracle_isotropy(const Options &o, const IsotropyArgs &s) {
    const FieldDescriptor d = resolve_field(o);
    const Presentation p(parse_symbol_kind(s.kind), FieldElement::parse(d, s.a), FieldElement::parse(d, s.b));
    const NormForm nf = norm_form(p);
    SearchWindow window;
    window.min_exponent = s.min_exp;
    window.max_exponent = s.max_exp;
    const auto witness = isotropy_witness_search(nf.form, window);
    const int inv = symbol_invariant(p.kind(), p.a(), p.b());
    Json doc = header("oracle isotropy", d,
                      Json{{"presentation", json_io::to_json(p)},
                           {"window", d.is_laurent() ? Json{{"min_exponent", s.min_exp}, {"max_exponent", s.max_exp}}
                                                     : Json("exhaustive")}});
    Json result{{"found", witness.has_value()}};
    result["witness"] = witness ? Json{{"form_coords", vector_json(*witness)},
                                       {"element", json_io::to_json(nf.from_form(p, *witness))}}
                                : Json(nullptr);
    bool agrees = witness.has_value() == (inv == 0);
    if (!d.is_laurent()) {
        const bool brute = brute_force_isotropy(nf.form).has_value();
        result["brute_force_found"] = brute;
        agrees = agrees && brute == witness.has_value();
    }
    result["invariant"] = inv;
    result["agrees"] = agrees;
    doc["result"] = result;
    doc["method"] = d.is_laurent() ? "search" : "exhaustive";
    return {doc, agrees ? 0 : 1};
}

struct GridArgs {
    int vmin = kStandardConfig.grid.min_valuation;
    int vmax = kStandardConfig.grid.max_valuation;
    int terms = kStandardConfig.grid.coefficients;
};

Outcome oracle_cross_validate(const Options &o, const GridArgs &g) {
    const FieldDescriptor d = resolve_field(o);
    OracleConfig cfg;
    cfg.grid = {g.vmin, g.vmax, g.terms};
    const CrossValidationReport r = cross_validate_invariant(standard_grid(d, cfg), cfg);
    Json inputs = d.is_laurent() ? Json{{"min_valuation", g.vmin}, {"max_valuation", g.vmax}, {"terms", g.terms}}
                                 : Json{{"grid", "exhaustive"}};
    Json doc = header("oracle cross-validate", d, inputs);
    doc["result"] = json_io::to_json(r);
    return {doc, r.passed() ? 0 : 1};
}

Outcome selftest(const Options &o) {
    Json doc{{"command", "selftest"}, {"field", "all"}, {"inputs", Json{{"seed", o.seed}}}};
    doc["result"] = selftest_transcript(o.seed);
    return {doc, doc["result"]["passed"].get<bool>() ? 0 : 1};
}

bool is_usage_error(const Error &err) {
    return dynamic_cast<const SyntaxError *>(&err) || dynamic_cast<const ConventionRequired *>(&err) ||
           dynamic_cast<const PrecisionOverflow *>(&err) || dynamic_cast<const DescriptorMismatch *>(&err) ||
           dynamic_cast<const PresentationMismatch *>(&err) || dynamic_cast<const WindowTooLarge *>(&err);
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Characteristic-2 quaternion symbols and common slots", "char2q"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--field", o.field, "field descriptor, e.g. gf(4) or laurent(gf(2),prec=16)");
    app.add_option("--prec", o.prec, "Laurent precision override")->check(CLI::Range(1, kMaxPrecision));
    app.add_option("--seed", o.seed, "seed for randomized steps");
    app.add_flag("--json", o.json, "emit JSON");

    std::function<Outcome()> action;

    CLI::App *symbol = app.add_subcommand("symbol", "symbol invariants")->require_subcommand(1);
    SymbolArgs sym;
    CLI::App *inv = symbol->add_subcommand("inv", "split (0) or nonsplit (1)");
    inv->add_option("--kind", sym.kind, "as or bil")->required();
    inv->add_option("--a", sym.a)->required();
    inv->add_option("--b", sym.b)->required();
    inv->add_flag("--convention", sym.convention, "allow [a,0) = 0");
    inv->callback([&] { action = [&] { return symbol_inv(o, sym); }; });

    CLI::App *slot = app.add_subcommand("slot", "common-slot constructions")->require_subcommand(1);
    SlotArgs sa;
    for (Theorem t : {Theorem::CommonSecond, Theorem::CommonFirstAs, Theorem::CommonFirstBil}) {
        CLI::App *sub = slot->add_subcommand(std::string(to_string(t)));
        sub->add_option("--a1", sa.a1);
        sub->add_option("--b1", sa.b1);
        sub->add_option("--a2", sa.a2);
        sub->add_option("--b2", sa.b2);
        sub->add_option("--witness-file", sa.witness_file, "JSON instance with witnesses");
        sub->callback([&, t] { action = [&, t] { return slot_command(o, t, sa); }; });
    }

    CLI::App *oracle = app.add_subcommand("oracle", "brute-force checks")->require_subcommand(1);
    IsotropyArgs iso;
    CLI::App *isotropy = oracle->add_subcommand("isotropy", "search the norm form for an isotropic vector");
    isotropy->add_option("--kind", iso.kind)->required();
    isotropy->add_option("--a", iso.a)->required();
    isotropy->add_option("--b", iso.b)->required();
    isotropy->add_option("--min-exp", iso.min_exp);
    isotropy->add_option("--max-exp", iso.max_exp);
    isotropy->callback([&] { action = [&] { return oracle_isotropy(o, iso); }; });
    GridArgs grid;
    CLI::App *cross = oracle->add_subcommand("cross-validate", "residue invariant against isotropy search");
    cross->add_option("--window-min", grid.vmin);
    cross->add_option("--window-max", grid.vmax);
    cross->add_option("--window-terms", grid.terms);
    cross->callback([&] { action = [&] { return oracle_cross_validate(o, grid); }; });

    CLI::App *self = app.add_subcommand("selftest", "run every property suite");
    self->callback([&] { action = [&] { return selftest(o); }; });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        const Outcome result = action();
        if (o.json)
            out << result.doc.dump(2) << "\n";
        else
            flatten(result.doc, "", out);
        return result.code;
    } catch (const Error &e) {
        err << "char2q: " << e.what() << "\n";
        return is_usage_error(e) ? 2 : 1;
    }
}

} // namespace char2q::cli
