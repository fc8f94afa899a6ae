#include "tscope/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tscope/error.hpp"

namespace tscope {

using json = nlohmann::json;

Modulus modulus_of_level(std::uint64_t n)
{
    if (n < 2) throw InvalidArgument("level " + std::to_string(n) + " is not a prime power >= 2");
    std::uint64_t p = 2;
    while (p * p <= n && n % p != 0) ++p;
    if (n % p != 0) p = n;
    int k = 0;
    auto m = n;
    while (m % p == 0) {
        m /= p;
        ++k;
    }
    if (m != 1) throw InvalidArgument("level " + std::to_string(n) + " is not a prime power");
    return Modulus(p, k);
}

Modulus CatalogEntry::modulus() const { return modulus_of_level(level); }

MatrixGroup CatalogEntry::group() const
{
    auto const m = modulus();
    std::vector<GMat> gens;
    for (auto const & e : generators) gens.emplace_back(m, e);
    return MatrixGroup(m, std::move(gens));
}

std::vector<std::string> const & builtin_names()
{
    static std::vector<std::string> const names{"full",
                                                "borel",
                                                "split_cartan",
                                                "split_cartan_normalizer",
                                                "nonsplit_cartan",
                                                "nonsplit_cartan_normalizer",
                                                "paper_7ns21",
                                                "paper_7ns21_index3",
                                                "unipotent_column"};
    return names;
}

std::uint64_t least_nonresidue(std::uint64_t ell)
{
    if (ell == 2 || !is_prime(ell)) throw InvalidArgument("least nonresidue needs an odd prime");
    Modulus const m(ell, 1);
    for (std::uint64_t e = 2; e < ell; ++e)
        if (m.pow(e, (ell - 1) / 2) == ell - 1) return e;
    throw Error("internal: no nonresidue");
}

namespace {

Entries to_entries(GMat const & g) { return g.entries(); }

std::vector<GMat> nonsplit_generators(Modulus const & m1)
{
    auto const ell = m1.ell();
    if (ell == 2) return {GMat(m1, 0, -1, 1, -1)};
    auto const eps = static_cast<std::int64_t>(least_nonresidue(ell));
    // the nonsplit Cartan is cyclic: take an element of order ell^2 - 1
    for (std::int64_t a = 0; a < static_cast<std::int64_t>(ell); ++a)
        for (std::int64_t b = 1; b < static_cast<std::int64_t>(ell); ++b) {
            GMat const x(m1, a, b * eps, b, a);
            if (x.order() == ell * ell - 1) return {x};
        }
    throw Error("internal: nonsplit Cartan is not cyclic");
}

std::vector<GMat> unit_diagonals(Modulus const & m)
{
    std::vector<GMat> out;
    for (auto u : m.unit_generators()) {
        out.push_back(GMat::diag(m, static_cast<std::int64_t>(u), 1));
        out.push_back(GMat::diag(m, 1, static_cast<std::int64_t>(u)));
    }
    return out;
}

} // namespace

CatalogEntry builtin(std::string const & name, std::uint64_t ell, int k)
{
    auto const & names = builtin_names();
    if (std::find(names.begin(), names.end(), name) == names.end())
        throw InvalidArgument("unknown builtin group '" + name + "'");
    Modulus const mk(ell, k);
    Modulus const m1(ell, 1);

    std::vector<GMat> gens;
    bool mod_ell = true;
    bool exceptional = false;
    if (name == "full") {
        gens = gl2_generators(mk);
        mod_ell = false;
    } else if (name == "borel") {
        gens = unit_diagonals(m1);
        gens.emplace_back(m1, 1, 1, 0, 1);
    } else if (name == "split_cartan") {
        gens = unit_diagonals(m1);
    } else if (name == "split_cartan_normalizer") {
        gens = unit_diagonals(m1);
        gens.emplace_back(m1, 0, 1, 1, 0);
    } else if (name == "nonsplit_cartan") {
        gens = nonsplit_generators(m1);
    } else if (name == "nonsplit_cartan_normalizer") {
        gens = nonsplit_generators(m1);
        if (ell == 2)
            gens.emplace_back(m1, 1, -1, 0, -1);
        else
            gens.push_back(GMat::diag(m1, 1, -1));
    } else if (name == "paper_7ns21" || name == "paper_7ns21_index3") {
        if (ell != 7) throw InvalidArgument(name + " is defined only for ell = 7");
        if (name == "paper_7ns21")
            gens = {GMat(m1, 0, 1, 1, 0), GMat(m1, 2, 0, 0, 1)};
        else
            gens = {GMat::diag(m1, 1, 6), GMat::diag(m1, 2, 2)};
        exceptional = true;
    } else { // unipotent_column
        for (auto u : mk.unit_generators()) gens.push_back(GMat::diag(mk, 1, static_cast<std::int64_t>(u)));
        gens.emplace_back(mk, 1, 1, 0, 1);
        mod_ell = false;
    }

    MatrixGroup g(mod_ell ? m1 : mk, gens);
    if (mod_ell && k > 1) gens = full_preimage_gens(g, mk);

    CatalogEntry e;
    e.label = name;
    e.level = mk.n();
    for (auto const & s : gens) e.generators.push_back(to_entries(s));
    e.source = Source::builtin;
    e.exceptional_j7 = exceptional;
    return e;
}

namespace {

std::size_t line_of(std::string const & text, std::size_t byte)
{
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

[[noreturn]] void invalid(std::string const & label, std::string const & what)
{
    throw InvalidArgument("catalog entry '" + label + "': " + what);
}

CatalogEntry entry_from_json(json const & j, std::size_t position)
{
    std::string const where = "entry " + std::to_string(position);
    if (!j.is_object()) invalid(where, "not a JSON object");
    if (!j.contains("label") || !j["label"].is_string()) invalid(where, "missing string field 'label'");
    CatalogEntry e;
    e.label = j["label"].get<std::string>();
    e.source = Source::file;
    if (!j.contains("level") || !j["level"].is_number_unsigned()) invalid(e.label, "missing positive integer 'level'");
    e.level = j["level"].get<std::uint64_t>();
    Modulus m(2, 1);
    try {
        m = modulus_of_level(e.level);
    } catch (InvalidArgument const & ex) {
        invalid(e.label, ex.what());
    }
    if (!j.contains("generators") || !j["generators"].is_array()) invalid(e.label, "missing array 'generators'");
    std::size_t gi = 0;
    for (auto const & g : j["generators"]) {
        if (!g.is_array() || g.size() != 4) invalid(e.label, "generator " + std::to_string(gi) + " is not a 4-tuple");
        Entries raw{};
        std::array<std::int64_t, 4> signed_raw{};
        for (std::size_t i = 0; i < 4; ++i) {
            if (!g[i].is_number_integer()) invalid(e.label, "generator " + std::to_string(gi) + " has a non-integer entry");
            signed_raw[i] = g[i].get<std::int64_t>();
        }
        try {
            GMat const x(m, signed_raw[0], signed_raw[1], signed_raw[2], signed_raw[3]);
            raw = x.entries();
        } catch (InvalidArgument const &) {
            invalid(e.label, "generator " + std::to_string(gi) + " has non-unit determinant mod " + std::to_string(e.level));
        }
        e.generators.push_back(raw);
        ++gi;
    }
    if (j.contains("index")) {
        if (!j["index"].is_number_unsigned()) invalid(e.label, "'index' is not a positive integer");
        e.index_claimed = j["index"].get<std::uint64_t>();
    }
    if (j.contains("cm")) {
        if (!j["cm"].is_boolean()) invalid(e.label, "'cm' is not a boolean");
        e.cm = j["cm"].get<bool>();
    }
    BigInt index;
    try {
        index = index_and_d(e.group()).index;
    } catch (CapExceeded const & ex) {
        invalid(e.label, ex.what());
    }
    if (e.index_claimed && index != *e.index_claimed) {
            invalid(e.label, "claimed index " + std::to_string(*e.index_claimed) + " but closure gives " + index.str());
    }
    return e;
}

} // namespace

std::vector<CatalogEntry> parse_catalog(std::string const & text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (json::parse_error const & ex) {
        throw InvalidArgument("catalog parse error at line " + std::to_string(line_of(text, ex.byte > 0 ? ex.byte - 1 : 0)) +
                              ": " + ex.what());
    }
    if (!doc.is_array()) throw InvalidArgument("catalog parse error at line 1: top level must be an array");
    std::vector<CatalogEntry> out;
    std::size_t i = 0;
    for (auto const & j : doc) out.push_back(entry_from_json(j, i++));
    return out;
}

std::vector<CatalogEntry> load_catalog(std::string const & path)
{
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open catalog file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_catalog(ss.str());
}

std::string dump_catalog(std::vector<CatalogEntry> const & entries)
{
    json doc = json::array();
    for (auto const & e : entries) {
        json j;
        j["label"] = e.label;
        j["level"] = e.level;
        json gens = json::array();
        for (auto const & g : e.generators) gens.push_back({g[0], g[1], g[2], g[3]});
        j["generators"] = gens;
        if (e.index_claimed) j["index"] = *e.index_claimed;
        if (e.cm) j["cm"] = true;
        doc.push_back(j);
    }
    return doc.dump(2) + "\n";
}

void save_catalog(std::string const & path, std::vector<CatalogEntry> const & entries)
{
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write catalog file " + path);
    out << dump_catalog(entries);
}

std::optional<CatalogEntry> find_entry(std::vector<CatalogEntry> const & entries, std::string const & label)
{
    for (auto const & e : entries)
        if (e.label == label) return e;
    return std::nullopt;
}

std::vector<SignedEntries> parse_generator_list(std::string const & text)
{
    std::vector<SignedEntries> out;
    std::string s;
    for (char c : text)
        if (c != ' ' && c != '\t') s.push_back(c);
    if (s.empty()) return out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (item.empty()) continue;
        SignedEntries v{};
        std::stringstream is(item);
        std::string num;
        std::size_t i = 0;
        while (std::getline(is, num, ',')) {
            if (i >= 4) throw InvalidArgument("generator '" + item + "' has more than 4 entries");
            std::size_t used = 0;
            try {
                v[i] = std::stoll(num, &used);
            } catch (std::exception const &) {
                used = 0;
            }
            if (used == 0 || used != num.size()) throw InvalidArgument("bad integer '" + num + "' in generator '" + item + "'");
            ++i;
        }
        if (i != 4) throw InvalidArgument("generator '" + item + "' needs 4 entries");
        out.push_back(v);
    }
    return out;
}

} // namespace tscope
