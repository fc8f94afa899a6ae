#include "tscope/cli.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tscope/catalog.hpp"
#include "tscope/cmformulas.hpp"
#include "tscope/error.hpp"
#include "tscope/formulas.hpp"
#include "tscope/isogeny.hpp"
#include "tscope/orbits.hpp"

namespace tscope::cli {

using json = nlohmann::json;

namespace {

struct Options
{
    std::uint64_t level = 0;
    std::optional<std::string> gens;
    std::string label;
    std::string catalog;
    std::uint64_t ell = 0;
    int k = 0;
    std::uint64_t order = 0;
    int r = -1;
    int max_r = -1;
    std::string theorem;
    std::int64_t delta_k = 0;
    std::uint64_t cond = 0;
    int n = 0;
    std::uint64_t h_k = 0;
    bool json_out = true;
    bool table_out = false;

    // class hypotheses for verify
    bool exceptional_j7 = false;
    bool rational_25 = false;
    bool two_torsion = false;
    bool four_point = false;
    bool eight_point = false;
    bool cubic_two_torsion = false;
    std::string image_labels;
    int d = -1;
};

struct Resolved
{
    MatrixGroup group;
    std::string label;
    std::string source;
    bool exceptional_j7 = false;
    bool cm = false;
};

class UsageError : public Error
{
public:
    using Error::Error;
};

std::vector<std::string> split_csv(std::string const & s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

json vec_json(Vec2 v) { return json::array({v.x, v.y}); }

json gens_json(MatrixGroup const & g)
{
    json a = json::array();
    for (auto const & s : g.generators()) {
        auto const & e = s.entries();
        a.push_back({e[0], e[1], e[2], e[3]});
    }
    return a;
}

Resolved resolve_group(Options const & o, std::vector<std::string> & assumptions)
{
    if (!o.label.empty()) {
        if (!o.catalog.empty()) {
            auto const entries = load_catalog(o.catalog);
            auto e = find_entry(entries, o.label);
            if (!e) throw UsageError("label '" + o.label + "' not found in " + o.catalog);
            return {e->group(), e->label, "file", false, e->cm};
        }
        auto const & names = builtin_names();
        if (std::find(names.begin(), names.end(), o.label) == names.end())
            throw UsageError("label '" + o.label + "' is not a builtin; pass --catalog to look it up");
        Modulus m = o.level ? modulus_of_level(o.level) : Modulus(o.ell ? o.ell : 2, 1);
        if (!o.level && !o.ell) throw UsageError("builtin groups need --l or --level");
        if (o.ell && o.ell != m.ell()) throw UsageError("--l does not match --level");
        auto const e = builtin(o.label, m.ell(), m.k());
        if (e.exceptional_j7) assumptions.push_back("class contains j = 3^3*5*7^5/2^7");
        return {e.group(), e.label, "builtin", e.exceptional_j7, false};
    }
    if (!o.gens) throw UsageError("give --gens with --level, or --label");
    if (!o.level) throw UsageError("--gens needs --level");
    auto const m = modulus_of_level(o.level);
    std::vector<GMat> gens;
    for (auto const & e : parse_generator_list(*o.gens)) gens.emplace_back(m, e[0], e[1], e[2], e[3]);
    return {MatrixGroup(m, std::move(gens)), "", "gens", false, false};
}

void require_non_cm(Resolved const & r)
{
    if (r.cm) throw UsageError("catalog entry '" + r.label + "' is CM; orbit degrees use non-CM semantics");
}

std::string preimage_note(Modulus const & m)
{
    return "group treated as full preimage at level " + std::to_string(m.n());
}

ScanOptions scan_opts() { return scan_options_from_env(); }

int clamp_r_max(Options const & o, std::uint64_t ell, int k, std::vector<std::string> & assumptions)
{
    int const requested = o.max_r >= 0 ? o.max_r : 2 * k + 4;
    int const cap = max_scannable_r(ell, k, scan_opts());
    if (cap < 0) throw CapExceeded("ambient level " + std::to_string(ell) + "^" + std::to_string(k), ambient_cap(ell, scan_opts()));
    if (requested > cap) {
        assumptions.push_back("r_max " + std::to_string(requested) + " clamped to " + std::to_string(cap) +
                              " by the ambient cap " + std::to_string(ambient_cap(ell, scan_opts())));
        return cap;
    }
    if (o.max_r < 0) assumptions.push_back("r_max defaults to 2k+4 = " + std::to_string(requested));
    return requested;
}

json report_json(ScanReport const & rep)
{
    json orbits = json::array();
    for (auto const & o : rep.kernel_orbits)
        orbits.push_back({{"id", o.id},
                          {"kernel_generator", vec_json(o.representative.gen)},
                          {"kernel_orbit_size", o.kernel_orbit_size},
                          {"degrees", o.degrees}});
    json j{{"r", rep.r},
           {"min_degree", rep.min_degree},
           {"kernel_orbits", orbits},
           {"witness",
            {{"orbit_id", rep.witness.orbit_id},
             {"kernel_generator", vec_json(rep.witness.kernel.gen)},
             {"point", vec_json(rep.witness.point)}}}};
    auto const odd = rep.min_odd_degree();
    j["min_odd_degree"] = odd ? json(*odd) : json(nullptr);
    return j;
}

// ---- commands ---------------------------------------------------------

json cmd_group_info(Options const & o, json & params, std::vector<std::string> & assumptions)
{
    auto const res = resolve_group(o, assumptions);
    auto const & m = res.group.level();
    params["level"] = m.n();
    if (!res.label.empty()) params["label"] = res.label;
    auto const g = res.group.closed();
    auto const info = index_and_d(g);
    assumptions.push_back(preimage_note(m) + " when reading the index as an ell-adic index");
    json full = json::object();
    for (int j = 1; j <= m.k(); ++j) full[std::to_string(j)] = is_full_preimage(g, j);
    return {{"label", res.label},
            {"source", res.source},
            {"level", m.n()},
            {"ell", m.ell()},
            {"k", m.k()},
            {"generators", gens_json(g)},
            {"order", g.order()},
            {"index", info.index.str()},
            {"d", info.d},
            {"has_neg_id", g.has_neg_id()},
            {"is_full_preimage", full},
            {"preimage_level", preimage_level(g)}};
}

json cmd_degrees(Options const & o, json & params, std::vector<std::string> & assumptions)
{
    auto const res = resolve_group(o, assumptions);
    require_non_cm(res);
    auto const & m = res.group.level();
    auto const target = o.order ? modulus_of_level(o.order) : m;
    if (target.ell() != m.ell()) throw UsageError("--order must be a power of " + std::to_string(m.ell()));
    params["level"] = m.n();
    params["order"] = target.n();
    MatrixGroup g = res.group;
    if (target.k() > m.k()) {
        g = MatrixGroup(target, full_preimage_gens(res.group, target));
        assumptions.push_back(preimage_note(m));
    } else if (target.k() < m.k()) {
        g = reduce(res.group, target);
    }
    assumptions.push_back("-I adjoined: degrees of closed points are twist invariant");
    auto const degs = closed_point_degrees(g, target);
    return {{"order", target.n()},
            {"degrees", degs},
            {"count", degs.size()},
            {"min", degs.empty() ? json(nullptr) : json(degs.front())},
            {"max", degs.empty() ? json(nullptr) : json(degs.back())}};
}

json cmd_scan(Options const & o, json & params, std::vector<std::string> & assumptions)
{
    auto const res = resolve_group(o, assumptions);
    require_non_cm(res);
    auto const ell = res.group.level().ell();
    if (o.ell && o.ell != ell) throw UsageError("--l does not match the group level");
    if (o.k < 1) throw UsageError("scan needs --k >= 1");
    params["ell"] = ell;
    params["k"] = o.k;
    assumptions.push_back(preimage_note(res.group.level()));
    int lo = 0, hi = 0;
    if (o.r >= 0) {
        lo = hi = o.r;
        params["r"] = o.r;
    } else {
        hi = clamp_r_max(o, ell, o.k, assumptions);
        params["max_r"] = hi;
    }
    json reports = json::array();
    std::optional<std::uint64_t> best, best_odd;
    int best_r = -1, best_odd_r = -1;
    for (int r = lo; r <= hi; ++r) {
        auto const rep = isogeny_class_degrees(res.group, ell, o.k, r, scan_opts());
        reports.push_back(report_json(rep));
        if (!best || rep.min_degree < *best) {
            best = rep.min_degree;
            best_r = r;
        }
        auto const odd = rep.min_odd_degree();
        if (odd && (!best_odd || *odd < *best_odd)) {
            best_odd = odd;
            best_odd_r = r;
        }
    }
    return {{"ell", ell},
            {"k", o.k},
            {"scans", reports},
            {"min_degree", *best},
            {"at_r", best_r},
            {"min_odd_degree", best_odd ? json(*best_odd) : json(nullptr)},
            {"odd_at_r", best_odd ? json(best_odd_r) : json(nullptr)}};
}

json cmd_cm(Options const & o, json & params, std::vector<std::string> &)
{
    if (o.delta_k == 0) throw UsageError("cm needs --delta-k");
    params["delta_k"] = o.delta_k;
    std::optional<std::uint64_t> hk;
    if (o.h_k) hk = o.h_k;
    CMOrder const maximal(o.delta_k, 1);
    json result{{"delta_k", o.delta_k}, {"w_k", maximal.w_k()}, {"h_k", hk ? *hk : maximal.h_k()}};
    if (o.cond) {
        params["cond"] = o.cond;
        CMOrder const ord(o.delta_k, o.cond);
        result["order"] = {{"conductor", o.cond},
                           {"discriminant", ord.delta()},
                           {"class_number", cm_class_number(ord, hk)},
                           {"reduced_forms", reduced_forms_count(ord.delta())}};
    }
    if (o.ell) {
        if (o.n < 1) throw UsageError("cm with --l needs --n >= 1");
        params["ell"] = o.ell;
        params["n"] = o.n;
        auto const r = cm_min_degree(o.delta_k, hk, o.ell, o.n);
        CMOrder const witness(o.delta_k, r.witness_conductor);
        result["least_degree"] = {{"delta", r.delta},
                                  {"splitting", to_string(r.splitting)},
                                  {"branch", r.branch},
                                  {"witness_conductor", r.witness_conductor},
                                  {"witness_class_number", cm_class_number(witness, hk)},
                                  {"note", r.note ? json(*r.note) : json(nullptr)}};
    }
    return result;
}

ClassDescriptor descriptor_from(Options const & o, Resolved const * res, std::uint64_t ell, Table t)
{
    ClassDescriptor d;
    d.ell = ell;
    d.k = o.k;
    d.table = t;
    d.exceptional_j7 = o.exceptional_j7 || (res && res->exceptional_j7);
    d.rational_25_isogeny = o.rational_25;
    d.rational_2_torsion = o.two_torsion;
    d.rational_4_point = o.four_point;
    d.rational_8_point = o.eight_point;
    d.cubic_full_2_torsion = o.cubic_two_torsion;
    for (auto const & l : split_csv(o.image_labels)) d.image_labels.insert(l);
    if (res && res->source == "file") d.image_labels.insert(res->label);
    if (o.d >= 0) d.d = o.d;
    return d;
}

json cmd_verify_cm(Options const & o, json & params, bool & passed)
{
    if (o.delta_k == 0 || !o.ell || o.n < 1) throw UsageError("verify --theorem 9 needs --delta-k, --l and --n");
    params["delta_k"] = o.delta_k;
    params["ell"] = o.ell;
    params["n"] = o.n;
    std::optional<std::uint64_t> hk;
    if (o.h_k) hk = o.h_k;
    auto const r = cm_min_degree(o.delta_k, hk, o.ell, o.n);
    CMOrder const witness(o.delta_k, r.witness_conductor);
    auto const h_formula = cm_class_number(witness, hk);
    auto const h_forms = reduced_forms_count(witness.delta());
    json checks = json::array();
    bool ok = h_formula == h_forms;
    checks.push_back({{"check", "witness class number equals reduced form count"},
                      {"formula", h_formula},
                      {"forms", h_forms},
                      {"passed", ok}});
    if (r.splitting == Splitting::split) {
        auto const lhs = r.delta * witness.w_k();
        auto const rhs = 2 * (hk ? *hk : witness.h_k()) * ipow(o.ell, o.n - 1) * (o.ell - 1);
        bool const s = lhs == rhs && r.witness_conductor == 1;
        checks.push_back({{"check", "split: delta*w_K = 2 h_K ell^(n-1)(ell-1), conductor 1"}, {"passed", s}});
        ok = ok && s;
    } else {
        bool const s = r.witness_conductor == ipow(o.ell, o.n / 2);
        checks.push_back({{"check", "witness conductor ell^floor(n/2)"}, {"passed", s}});
        ok = ok && s;
    }
    passed = ok;
    return {{"theorem", "9"},
            {"delta", r.delta},
            {"splitting", to_string(r.splitting)},
            {"branch", r.branch},
            {"witness_conductor", r.witness_conductor},
            {"note", r.note ? json(*r.note) : json(nullptr)},
            {"checks", checks},
            {"passed", ok}};
}

json cmd_verify(Options const & o, json & params, std::vector<std::string> & assumptions, bool & passed)
{
    if (o.theorem.empty()) throw UsageError("verify needs --theorem");
    params["theorem"] = o.theorem;
    if (o.theorem == "9") return cmd_verify_cm(o, params, passed);
    auto const table = parse_table(o.theorem);
    if (!table) throw UsageError("unknown theorem '" + o.theorem + "'; use 1.3, 5.1, 6.1, 7.1 or 9");
    auto const res = resolve_group(o, assumptions);
    require_non_cm(res);
    auto const ell = res.group.level().ell();
    if (o.ell && o.ell != ell) throw UsageError("--l does not match the group level");
    if (o.k < 1) throw UsageError("verify needs --k >= 1");
    params["ell"] = ell;
    params["k"] = o.k;
    if (!res.label.empty()) params["label"] = res.label;

    auto desc = descriptor_from(o, &res, ell, *table);
    if (*table == Table::prime_three && !desc.d) {
        bool from_label = false;
        for (auto const & l : desc.image_labels) from_label = from_label || label_index_valuation(l, 3).has_value();
        if (!from_label) {
            desc.d = index_and_d(res.group.closed()).d;
            assumptions.push_back("d = " + std::to_string(*desc.d) + " taken from the group index");
        }
    }
    std::optional<TheoremDelta> td;
    std::string no_odd;
    try {
        td = theorem_delta(desc);
    } catch (NoOddDegree const & ex) {
        no_odd = ex.what();
    }

    int const r_max = clamp_r_max(o, ell, o.k, assumptions);
    params["max_r"] = r_max;
    assumptions.push_back(preimage_note(res.group.level()));

    json failure = nullptr;
    std::optional<std::uint64_t> min_odd;
    int min_odd_r = -1;
    std::uint64_t min_any = 0;
    std::uint64_t checked = 0;
    for (int r = 0; r <= r_max && failure.is_null(); ++r) {
        auto const rep = isogeny_class_degrees(res.group, ell, o.k, r, scan_opts());
        if (r == 0 || rep.min_degree < min_any) min_any = rep.min_degree;
        for (auto const & orb : rep.kernel_orbits) {
            for (auto deg : orb.degrees) {
                if (deg % 2 == 0) continue;
                ++checked;
                if (!min_odd || deg < *min_odd) {
                    min_odd = deg;
                    min_odd_r = r;
                }
                bool const bad = td ? deg % td->delta != 0 : true;
                if (bad && failure.is_null())
                    failure = {{"reason", td ? "odd degree not divisible by delta" : "odd degree where none is allowed"},
                               {"r", r},
                               {"degree", deg},
                               {"kernel_orbit", orb.id},
                               {"kernel_generator", vec_json(orb.representative.gen)}};
            }
        }
    }
    // attainment speaks about classes with odd-degree points
    bool const attainment_checked = td && td->attained && min_odd.has_value();
    if (failure.is_null() && attainment_checked && min_odd != td->delta)
        failure = {{"reason", "promised degree not attained"},
                   {"delta", td->delta},
                   {"min_odd_degree", min_odd ? json(*min_odd) : json(nullptr)}};
    passed = failure.is_null();
    json result{{"theorem", o.theorem},
                {"table", table_name(*table)},
                {"r_max", r_max},
                {"odd_degrees_checked", checked},
                {"min_degree", min_any},
                {"min_odd_degree", min_odd ? json(*min_odd) : json(nullptr)},
                {"min_odd_at_r", min_odd ? json(min_odd_r) : json(nullptr)},
                {"passed", passed},
                {"failure", failure}};
    if (td) {
        result["delta"] = td->delta;
        result["branch"] = td->branch;
        result["attainment_promised"] = td->attained;
        result["attained"] = min_odd == td->delta;
        result["attainment_checked"] = attainment_checked;
        if (td->attained && !min_odd) assumptions.push_back("no odd degree in the scanned range; attainment not tested");
    } else {
        result["delta"] = nullptr;
        result["no_odd_degree"] = no_odd;
    }
    return result;
}

struct TableRow
{
    std::string ell;
    std::string branch;
    std::vector<std::string> cells;
};

json cmd_table(Options const & o, json & params, std::vector<TableRow> & rows)
{
    int const kmax = o.k > 0 ? o.k : 3;
    params["k_max"] = kmax;
    json out = json::array();
    struct Case
    {
        std::uint64_t ell;
        bool exceptional;
        std::string name;
    };
    std::vector<Case> const cases{{13, false, "13"}, {11, false, "11"}, {7, false, "7"}, {7, true, "7 (j=3^3*5*7^5/2^7)"},
                                  {5, false, "5"},   {3, false, "3"},   {2, false, "2"}, {17, false, "other"}};
    for (auto const & c : cases) {
        TableRow row{c.name, "", {}};
        json cells = json::array();
        for (int k = 1; k <= kmax; ++k) {
            ClassDescriptor d;
            d.ell = c.ell;
            d.k = k;
            d.table = Table::summary;
            d.exceptional_j7 = c.exceptional;
            try {
                auto const t = theorem_delta(d);
                row.branch = t.branch;
                row.cells.push_back(std::to_string(t.delta));
                cells.push_back({{"k", k}, {"delta", t.delta}});
            } catch (NoOddDegree const &) {
                row.cells.push_back("none");
                cells.push_back({{"k", k}, {"delta", nullptr}, {"no_odd_degree", true}});
            }
        }
        if (row.branch.empty()) row.branch = "no odd degree";
        out.push_back({{"ell", c.name}, {"branch", row.branch}, {"rows", cells}});
        rows.push_back(std::move(row));
    }
    return out;
}

void print_table(std::ostream & out, std::vector<TableRow> const & rows, int kmax)
{
    std::vector<std::string> header{"ell", "delta"};
    for (int k = 1; k <= kmax; ++k) header.push_back("k=" + std::to_string(k));
    std::vector<std::vector<std::string>> grid{header};
    for (auto const & r : rows) {
        std::vector<std::string> line{r.ell, r.branch};
        line.insert(line.end(), r.cells.begin(), r.cells.end());
        grid.push_back(line);
    }
    std::vector<std::size_t> width(header.size(), 0);
    for (auto const & line : grid)
        for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
    for (auto const & line : grid) {
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (i + 1 == line.size()) {
                out << line[i];
                break;
            }
            out << std::left << std::setw(static_cast<int>(width[i])) << line[i] << "  ";
        }
        out << "\n";
    }
}

} // namespace

int run(std::vector<std::string> const & args, std::ostream & out, std::ostream & err)
{
    CLI::App app{"Degrees of closed points on X1(ell^k) from Galois image data"};
    app.require_subcommand(1);
    Options o;

    auto add_group = [&](CLI::App * c) {
        c->add_option("--level", o.level, "level N = ell^k of the generators");
        c->add_option("--gens", o.gens, "generators 'a,b,c,d;...' (row-major)");
        c->add_option("--label", o.label, "builtin name or catalog label");
        c->add_option("--catalog", o.catalog, "catalog JSON file");
        c->add_option("--l", o.ell, "the prime ell");
    };
    auto add_output = [&](CLI::App * c) {
        c->add_flag("--json", o.json_out, "JSON output (default)");
    };
    auto add_class = [&](CLI::App * c) {
        c->add_flag("--exceptional-j7", o.exceptional_j7, "class contains j = 3^3*5*7^5/2^7");
        c->add_flag("--rational-25-isogeny", o.rational_25, "class has a rational cyclic 25-isogeny");
        c->add_flag("--rational-2-torsion", o.two_torsion, "some curve has a rational point of order 2");
        c->add_flag("--rational-4-point", o.four_point, "some curve has a rational point of order 4");
        c->add_flag("--rational-8-point", o.eight_point, "some curve has a rational point of order 8");
        c->add_flag("--cubic-full-2-torsion", o.cubic_two_torsion, "full 2-torsion over a cubic field");
        c->add_option("--image-labels", o.image_labels, "comma-separated image labels in the class");
        c->add_option("--d", o.d, "ord_ell of the ell-adic index");
    };

    auto * gi = app.add_subcommand("group-info", "order, index, -I and level of a group");
    add_group(gi);
    add_output(gi);
    auto * dg = app.add_subcommand("degrees", "closed-point degrees on X1(N) for an image");
    add_group(dg);
    add_output(dg);
    dg->add_option("--order", o.order, "torsion order N (defaults to the group level)");
    auto * sc = app.add_subcommand("scan", "degrees over the ell-power isogeny class");
    add_group(sc);
    add_output(sc);
    sc->add_option("--k", o.k, "torsion level exponent")->required();
    sc->add_option("--r", o.r, "single isogeny exponent r");
    sc->add_option("--max-r", o.max_r, "scan r = 0..max_r (default 2k+4, clamped to the cap)");
    auto * vf = app.add_subcommand("verify", "check a degree table against scans");
    add_group(vf);
    add_output(vf);
    add_class(vf);
    vf->add_option("--theorem", o.theorem, "1.3, 5.1, 6.1, 7.1 or 9")->required();
    vf->add_option("--k", o.k, "torsion level exponent");
    vf->add_option("--max-r", o.max_r, "largest isogeny exponent scanned");
    vf->add_option("--delta-k", o.delta_k, "fundamental discriminant (theorem 9)");
    vf->add_option("--n", o.n, "exponent n (theorem 9)");
    vf->add_option("--h-k", o.h_k, "override h_K");
    auto * cm = app.add_subcommand("cm", "CM class numbers and least degrees");
    add_output(cm);
    cm->add_option("--delta-k", o.delta_k, "fundamental discriminant")->required();
    cm->add_option("--cond", o.cond, "conductor f of an order");
    cm->add_option("--l", o.ell, "the prime ell");
    cm->add_option("--n", o.n, "exponent n");
    cm->add_option("--h-k", o.h_k, "override h_K");
    auto * tb = app.add_subcommand("table", "divisibility table for k = 1..K");
    add_output(tb);
    tb->add_option("--k", o.k, "largest k (default 3)");
    tb->add_flag("--table", o.table_out, "aligned text instead of JSON");

    std::vector<std::string> argv_store{"tscope"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char const *> argv;
    for (auto const & a : argv_store) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (CLI::CallForHelp const &) {
        out << app.help();
        return kExitOk;
    } catch (CLI::ParseError const & ex) {
        err << "usage error: " << ex.what() << "\n";
        return kExitUsage;
    }

    auto const start = std::chrono::steady_clock::now();
    json params = json::object();
    std::vector<std::string> assumptions;
    json result;
    std::string command;
    bool passed = true;
    std::vector<TableRow> rows;
    try {
        if (gi->parsed()) {
            command = "group-info";
            result = cmd_group_info(o, params, assumptions);
        } else if (dg->parsed()) {
            command = "degrees";
            result = cmd_degrees(o, params, assumptions);
        } else if (sc->parsed()) {
            command = "scan";
            result = cmd_scan(o, params, assumptions);
        } else if (vf->parsed()) {
            command = "verify";
            result = cmd_verify(o, params, assumptions, passed);
        } else if (cm->parsed()) {
            command = "cm";
            result = cmd_cm(o, params, assumptions);
        } else {
            command = "table";
            result = cmd_table(o, params, rows);
        }
    } catch (CapExceeded const & ex) {
        err << "cap exceeded: " << ex.what() << "\n";
        return kExitCap;
    } catch (Error const & ex) {
        err << "error: " << ex.what() << "\n";
        return kExitUsage;
    }
    auto const ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();

    if (command == "table" && o.table_out) {
        print_table(out, rows, o.k > 0 ? o.k : 3);
        return kExitOk;
    }
    json record{{"command", command},
                {"params", params},
                {"result", result},
                {"timing_ms", ms},
                {"assumptions", assumptions}};
    out << record.dump(2) << "\n";
    return passed ? kExitOk : kExitVerifyFailed;
}

} // namespace tscope::cli
