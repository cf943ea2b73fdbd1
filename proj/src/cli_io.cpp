#include "meb/cli_io.hpp"

#include "meb/equivalence.hpp"
#include "meb/errors.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <sstream>

namespace meb::io {

using nlohmann::json;

namespace {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string grid_text(const ExponentMatrix& e, const std::string& indent) {
    std::ostringstream os;
    os << "[\n";
    for (int r = 0; r < e.dim(); ++r) {
        os << indent << "  [";
        for (int c = 0; c < e.dim(); ++c) os << (c ? ", " : "") << e(r, c);
        os << ']' << (r + 1 < e.dim() ? "," : "") << '\n';
    }
    os << indent << ']';
    return os.str();
}

std::string generator_body(const ExponentMatrix& e, const std::optional<Provenance>& provenance, const std::string& indent) {
    std::ostringstream os;
    os << "{\n";
    os << indent << "  \"format\": \"meb-generator\",\n";
    os << indent << "  \"d\": " << e.dim() << ",\n";
    os << indent << "  \"base\": " << e.order() << ",\n";
    if (provenance) {
        os << indent << "  \"provenance\": {\"kind\": \"" << to_string(provenance->kind) << '"';
        if (provenance->decomposition) {
            os << ", \"decomposition\": [";
            const auto& f = provenance->decomposition->factors();
            for (std::size_t i = 0; i < f.size(); ++i) os << (i ? ", " : "") << f[i];
            os << ']';
        }
        os << "},\n";
    }
    os << indent << "  \"entries\": " << grid_text(e, indent + "  ") << '\n';
    os << indent << '}';
    return os.str();
}

json parse_json(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed ") + what + ": " + e.what());
    }
}

long long get_int(const json& obj, const std::string& key, const std::string& ctx) {
    if (!obj.contains(key)) throw ParseError(ctx + ": missing field '" + key + "'");
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) throw ParseError(ctx + ": field '" + key + "' must be an integer");
    return v.get<long long>();
}

struct ParsedGenerator {
    ExponentMatrix entries;
    std::optional<Provenance> provenance;
};

ParsedGenerator generator_from_json(const json& j, const std::string& ctx) {
    if (!j.is_object()) throw ParseError(ctx + ": expected an object");
    const auto d = get_int(j, "d", ctx);
    if (d < 1 || d > 4096) throw ParseError(ctx + ": field 'd' out of range");
    const auto base = j.contains("base") ? get_int(j, "base", ctx) : d;
    if (base < 1 || base > (1 << 20)) throw ParseError(ctx + ": field 'base' out of range");
    if (!j.contains("entries") || !j.at("entries").is_array()) throw ParseError(ctx + ": field 'entries' must be an array");
    const auto& rows = j.at("entries");
    if (static_cast<long long>(rows.size()) != d) {
        throw ParseError(ctx + ": field 'entries' has " + std::to_string(rows.size()) + " rows, expected " + std::to_string(d));
    }
    std::vector<int> flat;
    flat.reserve(static_cast<std::size_t>(d * d));
    for (long long r = 0; r < d; ++r) {
        const auto& row = rows.at(static_cast<std::size_t>(r));
        const std::string rctx = ctx + ": entries row " + std::to_string(r);
        if (!row.is_array()) throw ParseError(rctx + " is not an array");
        if (static_cast<long long>(row.size()) != d) {
            throw ParseError(rctx + " has length " + std::to_string(row.size()) + ", expected " + std::to_string(d));
        }
        for (long long c = 0; c < d; ++c) {
            const auto& v = row.at(static_cast<std::size_t>(c));
            if (!v.is_number_integer()) throw ParseError(rctx + " column " + std::to_string(c) + " is not an integer");
            const auto e = v.get<long long>();
            if (e < 0 || e >= base) {
                throw ParseError(rctx + " column " + std::to_string(c) + ": exponent " + std::to_string(e) +
                                 " not reduced modulo base " + std::to_string(base));
            }
            flat.push_back(static_cast<int>(e));
        }
    }
    ParsedGenerator out{ExponentMatrix(static_cast<int>(d), static_cast<int>(base), std::move(flat)), std::nullopt};

    if (j.contains("provenance")) {
        const auto& p = j.at("provenance");
        if (!p.is_object() || !p.contains("kind") || !p.at("kind").is_string()) {
            throw ParseError(ctx + ": field 'provenance' needs a string 'kind'");
        }
        Provenance prov;
        try {
            prov.kind = parse_kind(p.at("kind").get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw ParseError(ctx + ": " + e.what());
        }
        if (p.contains("decomposition")) {
            const auto& f = p.at("decomposition");
            if (!f.is_array() || f.empty()) throw ParseError(ctx + ": provenance decomposition must be a non-empty array");
            std::vector<int> factors;
            for (const auto& x : f) {
                if (!x.is_number_integer()) throw ParseError(ctx + ": provenance decomposition factors must be integers");
                factors.push_back(x.get<int>());
            }
            try {
                prov.decomposition = Decomposition(std::move(factors));
            } catch (const std::invalid_argument& e) {
                throw ParseError(ctx + ": provenance decomposition: " + e.what());
            }
            if (prov.decomposition->dim() != d) throw ParseError(ctx + ": provenance decomposition does not multiply to d");
        }
        out.provenance = std::move(prov);
    }
    return out;
}

void require_zeilinger(const ExponentMatrix& e, Tolerance tol) {
    const auto m = to_complex(e);
    if (!is_unitary(m, tol)) throw ValidationError("generator is not unitary");
    if (!is_zeilinger(m, tol)) throw ValidationError("generator entries do not all have modulus 1/sqrt(d)");
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void spill(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << text;
    out.flush();
    if (!out) throw IoError("failed writing '" + path + "'");
}

} // namespace

std::string to_string(GeneratorKind kind) {
    switch (kind) {
    case GeneratorKind::character: return "character";
    case GeneratorKind::dft: return "dft";
    case GeneratorKind::hadamard: return "hadamard";
    case GeneratorKind::custom: return "custom";
    }
    return "custom";
}

GeneratorKind parse_kind(const std::string& text) {
    if (text == "character") return GeneratorKind::character;
    if (text == "dft") return GeneratorKind::dft;
    if (text == "hadamard") return GeneratorKind::hadamard;
    if (text == "custom") return GeneratorKind::custom;
    throw std::invalid_argument("unknown generator kind '" + text + "'");
}

std::string generator_to_text(const ExponentMatrix& e, const std::optional<Provenance>& provenance) {
    return generator_body(e, provenance, "") + "\n";
}

GeneratorFile generator_from_text(const std::string& text, bool verify, Tolerance tol) {
    auto parsed = generator_from_json(parse_json(text, "generator file"), "generator");
    if (verify) require_zeilinger(parsed.entries, tol);
    return {std::move(parsed.entries), std::move(parsed.provenance)};
}

GeneratorFile read_generator(const std::string& path, bool verify, Tolerance tol) {
    try {
        return generator_from_text(slurp(path), verify, tol);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

void write_generator(const ExponentMatrix& e, const std::optional<Provenance>& provenance, const std::string& path) {
    spill(path, generator_to_text(e, provenance));
}

std::string basis_to_text(const MebBasis& basis, const std::optional<Provenance>& provenance) {
    const int d = basis.dim();
    std::ostringstream os;
    os << "{\n  \"format\": \"meb-basis\",\n  \"d\": " << d << ",\n";
    if (basis.generator()) os << "  \"generator\": " << generator_body(*basis.generator(), provenance, "  ") << ",\n";
    os << "  \"states\": [\n";
    for (int j = 0; j < d; ++j) {
        for (int k = 0; k < d; ++k) {
            os << "    {\"j\": " << j << ", \"k\": " << k << ", \"amplitudes\": [";
            const auto& amps = basis.state(j, k).amplitudes();
            for (std::size_t i = 0; i < amps.size(); ++i) {
                os << (i ? ", " : "") << '[' << format_double(amps[i].real()) << ", " << format_double(amps[i].imag()) << ']';
            }
            os << "]}" << (j * d + k + 1 < d * d ? "," : "") << '\n';
        }
    }
    os << "  ]\n}\n";
    return os.str();
}

MebBasis basis_from_text(const std::string& text, Tolerance tol) {
    const auto j = parse_json(text, "basis file");
    const std::string ctx = "basis";
    if (!j.is_object()) throw ParseError(ctx + ": expected an object");
    const auto d = get_int(j, "d", ctx);
    if (d < 1 || d > 64) throw ParseError(ctx + ": field 'd' out of range");
    std::optional<ExponentMatrix> generator;
    if (j.contains("generator")) {
        auto g = generator_from_json(j.at("generator"), ctx + ": generator");
        if (g.entries.dim() != d) throw ParseError(ctx + ": generator dimension does not match d");
        generator = std::move(g.entries);
    }
    if (!j.contains("states") || !j.at("states").is_array()) throw ParseError(ctx + ": field 'states' must be an array");
    const auto& arr = j.at("states");
    const auto n = static_cast<std::size_t>(d * d);
    if (arr.size() != n) throw ParseError(ctx + ": expected " + std::to_string(n) + " states, got " + std::to_string(arr.size()));

    std::vector<std::optional<BipartiteState>> slots(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& s = arr.at(i);
        const std::string sctx = ctx + ": states[" + std::to_string(i) + "]";
        if (!s.is_object()) throw ParseError(sctx + " is not an object");
        const auto sj = get_int(s, "j", sctx);
        const auto sk = get_int(s, "k", sctx);
        if (sj < 0 || sj >= d || sk < 0 || sk >= d) throw ParseError(sctx + ": index (j, k) out of range");
        const auto slot = static_cast<std::size_t>(sj * d + sk);
        if (slots[slot]) throw ParseError(sctx + ": duplicate index (" + std::to_string(sj) + ", " + std::to_string(sk) + ")");
        if (!s.contains("amplitudes") || !s.at("amplitudes").is_array() || s.at("amplitudes").size() != n) {
            throw ParseError(sctx + ": 'amplitudes' must hold " + std::to_string(n) + " [re, im] pairs");
        }
        std::vector<Complex> amps;
        amps.reserve(n);
        for (const auto& z : s.at("amplitudes")) {
            if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
                throw ParseError(sctx + ": amplitude entries must be [re, im] number pairs");
            }
            amps.emplace_back(z[0].get<double>(), z[1].get<double>());
        }
        try {
            slots[slot] = BipartiteState(static_cast<int>(d), ComplexVector(std::move(amps)), tol);
        } catch (const std::invalid_argument& e) {
            throw ValidationError(sctx + ": " + e.what());
        }
    }
    std::vector<BipartiteState> states;
    states.reserve(n);
    for (auto& s : slots) states.push_back(std::move(*s));
    return {static_cast<int>(d), std::move(states), std::move(generator)};
}

MebBasis read_basis(const std::string& path, Tolerance tol) {
    try {
        return basis_from_text(slurp(path), tol);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

void write_basis(const MebBasis& basis, const std::optional<Provenance>& provenance, const std::string& path) {
    spill(path, basis_to_text(basis, provenance));
}

// ---------------------------------------------------------------------------
// Command line

namespace {

Tolerance resolve_tolerance(const std::optional<double>& flag) {
    if (flag) return Tolerance(*flag);
    if (const char* env = std::getenv(kToleranceEnv); env && *env) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end == env || *end != '\0') throw std::invalid_argument(std::string(kToleranceEnv) + " is not a number");
        return Tolerance(v);
    }
    return {};
}

std::string mark(bool ok) { return ok ? "pass" : "FAIL"; }

std::string sci(double x) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(2) << x;
    return os.str();
}

std::string fixed6(Complex z) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(6) << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << 'i';
    return os.str();
}

void print_matrix(std::ostream& out, const std::string& label, const ComplexMatrix& m) {
    out << label << ":\n";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out << "  ";
        for (std::size_t c = 0; c < m.cols(); ++c) {
            // Normalize -0 so that output is reproducible.
            Complex z = m(r, c);
            if (std::abs(z.real()) < 5e-7) z.real(0.0);
            if (std::abs(z.imag()) < 5e-7) z.imag(0.0);
            out << (c ? " " : "") << fixed6(z);
        }
        out << '\n';
    }
}

void print_grid(std::ostream& out, const std::string& label, const ExponentMatrix& e) {
    out << label << " (base " << e.order() << "):\n";
    for (const auto& row : e.rows()) {
        out << "  ";
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? " " : "") << row[c];
        out << '\n';
    }
}

void print_meb_report(std::ostream& out, const MebReport& rep) {
    out << "orthonormal: " << mark(rep.orthonormal) << " (max gram residual " << sci(rep.gram_residual) << ")\n";
    out << "maximally entangled: " << mark(rep.maximally_entangled) << " (max entropy residual " << sci(rep.entropy_residual)
        << ")\n";
    if (rep.flat_generator) out << "flat generator columns: " << mark(*rep.flat_generator) << '\n';
}

void print_group_report(std::ostream& out, const GroupReport& rep) {
    out << "group closure: " << mark(rep.closure) << '\n';
    out << "group identity: " << mark(rep.identity_present) << '\n';
    out << "group inverses: " << mark(rep.inverses) << '\n';
    out << "group power condition: " << mark(rep.power_condition) << '\n';
    out << "group commutative: " << mark(rep.commutative) << '\n';
}

void print_failures(std::ostream& out, const std::vector<std::string>& failures) {
    for (const auto& f : failures) out << "  - " << f << '\n';
}

std::string describe(const std::optional<Provenance>& p) {
    if (!p) return "unknown";
    std::string s = to_string(p->kind);
    if (p->decomposition) s += " " + p->decomposition->to_string();
    return s;
}

struct Options {
    std::optional<double> tol;
    // decomp / classes
    int d = 0;
    // gen
    std::string decomp;
    std::optional<int> dft;
    std::optional<int> hadamard;
    std::string out_path;
    // basis / verify
    std::string gen_path;
    std::string basis_path;
    bool no_verify = false;
    // equiv / canon
    std::string file1;
    std::string file2;
    bool oracle = false;
    bool witness = false;
};

void emit(std::ostream& out, const std::string& path, const std::string& text) {
    if (path.empty()) {
        out << text;
    } else {
        spill(path, text);
        out << "wrote " << path << '\n';
    }
}

int cmd_decomp(const Options& o, std::ostream& out) {
    for (const auto& dec : decompositions(o.d)) out << dec.to_string() << '\n';
    return exit_code::success;
}

int cmd_gen(const Options& o, std::ostream& out) {
    ExponentMatrix e;
    Provenance prov;
    if (!o.decomp.empty()) {
        const auto dec = Decomposition::parse(o.decomp);
        e = zeilinger_generator(dec);
        prov = {dec.is_trivial() ? GeneratorKind::dft : GeneratorKind::character, dec};
    } else if (o.dft) {
        e = dft_generator(*o.dft);
        prov = {GeneratorKind::dft, Decomposition::trivial(*o.dft)};
    } else {
        e = hadamard_generator(*o.hadamard);
        prov = {GeneratorKind::hadamard, Decomposition(std::vector<int>(static_cast<std::size_t>(*o.hadamard), 2))};
        if (*o.hadamard == 1) prov.decomposition = Decomposition::trivial(2);
    }
    emit(out, o.out_path, generator_to_text(e, prov));
    return exit_code::success;
}

int cmd_basis(const Options& o, std::ostream& out) {
    const auto tol = resolve_tolerance(o.tol);
    const auto g = read_generator(o.gen_path, !o.no_verify, tol);
    emit(out, o.out_path, basis_to_text(generate_meb(g.entries, tol), g.provenance));
    return exit_code::success;
}

int cmd_verify(const Options& o, std::ostream& out) {
    const auto tol = resolve_tolerance(o.tol);
    std::optional<MebBasis> basis;
    std::optional<ExponentMatrix> generator;
    out << "tolerance: " << sci(tol.eps()) << '\n';
    if (!o.gen_path.empty()) {
        auto g = read_generator(o.gen_path, false, tol);
        out << "generator: d=" << g.entries.dim() << " base=" << g.entries.order() << " provenance=" << describe(g.provenance)
            << '\n';
        const bool zeilinger = is_zeilinger(to_complex(g.entries), tol);
        out << "zeilinger: " << mark(zeilinger) << '\n';
        if (!zeilinger) return exit_code::inequivalent;
        generator = g.entries;
        basis = generate_meb(g.entries, tol);
    } else {
        basis = read_basis(o.basis_path, tol);
        generator = basis->generator();
        out << "basis: d=" << basis->dim() << (generator ? " (generator recorded)" : "") << '\n';
    }
    const auto rep = verify_meb(*basis, tol);
    print_meb_report(out, rep);
    bool ok = rep.all_passed();
    std::vector<std::string> failures = rep.failures;
    if (generator) {
        const auto grp = group_verify(StateFamily::columns_of(*generator), tol);
        print_group_report(out, grp);
        ok = ok && grp.all_passed();
        failures.insert(failures.end(), grp.failures.begin(), grp.failures.end());
    }
    print_failures(out, failures);
    out << "result: " << (ok ? "all checks passed" : "checks failed") << '\n';
    return ok ? exit_code::success : exit_code::inequivalent;
}

int cmd_equiv(const Options& o, std::ostream& out, std::ostream& err) {
    const auto start = std::chrono::steady_clock::now();
    const auto tol = resolve_tolerance(o.tol);
    const auto g1 = read_generator(o.file1, true, tol);
    const auto g2 = read_generator(o.file2, true, tol);
    if (g1.entries.dim() != g2.entries.dim()) throw std::invalid_argument("generators have different dimensions");

    const bool equivalent = perm_equivalent(g1.entries, g2.entries);
    const int common = std::lcm(g1.entries.order(), g2.entries.order());
    out << "d: " << g1.entries.dim() << '\n';
    out << "first: " << describe(g1.provenance) << '\n';
    out << "second: " << describe(g2.provenance) << '\n';
    out << "tolerance: " << sci(tol.eps()) << '\n';
    print_grid(out, "canonical form 1", canonical_form(g1.entries.rebased(common)));
    print_grid(out, "canonical form 2", canonical_form(g2.entries.rebased(common)));
    out << "verdict: " << (equivalent ? "equivalent" : "inequivalent") << '\n';

    int code = equivalent ? exit_code::success : exit_code::inequivalent;
    std::optional<EquivalenceVerdict> verdict;
    if (o.oracle) verdict = meb_equivalent(g1.entries, g2.entries, tol);

    if (o.oracle) {
        const bool oracle_eq = is_equivalent(*verdict);
        out << "oracle: " << (oracle_eq ? "equivalent" : "inequivalent") << " (monomial search over column permutations)\n";
        if (oracle_eq != equivalent) {
            out << "discrepancy: exhaustive oracle disagrees with canonical forms\n";
            code = exit_code::discrepancy;
        }
    }
    if (verdict && is_equivalent(*verdict)) {
        const auto& w = std::get<Equivalent>(*verdict);
        out << "column permutation P1: " << w.col_perm.to_string() << '\n';
        out << "row permutation P: " << w.row_perm.to_string() << '\n';
        out << "diagonal D:";
        for (const auto& z : w.diag.phases()) out << ' ' << fixed6(z);
        out << '\n';
        out << "witness residual: " << sci(witness_residual(g1.entries, g2.entries, w)) << '\n';
    }
    if (o.witness && equivalent && code != exit_code::discrepancy) {
        const auto lifted = find_bilocal_witness(g1.entries, g2.entries, tol);
        if (!lifted) {
            out << "bilocal witness: none\n";
            err << "no monomial witness lifts to a bilocal unitary U1 (x) U2\n";
            code = exit_code::discrepancy;
        } else {
            const auto& [mono, b] = *lifted;
            const int d = g1.entries.dim();
            out << "bilocal witness P1: " << mono.col_perm.to_string() << '\n';
            out << "second permutation P2: " << b.second_perm.to_string() << '\n';
            out << "operator schmidt rank: 1\n";
            print_matrix(out, "U1", b.u1);
            print_matrix(out, "U2", b.u2);
            out << "pair map form: "
                << (b.single_permutation ? "single permutation" : b.product_form ? "product of two permutations" : "general")
                << '\n';
            out << "pair map (j,k) -> (j',k') with phase:\n";
            for (int i = 0; i < d * d; ++i) {
                out << "  (" << i / d << ',' << i % d << ") -> (" << b.pair_map[i].first << ',' << b.pair_map[i].second
                    << ") " << fixed6(b.phases[i]) << '\n';
            }
        }
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    out << "time: " << ms << " ms\n";
    return code;
}

int cmd_classes(const Options& o, std::ostream& out) {
    const auto tol = resolve_tolerance(o.tol);
    const auto classes = enumerate_classes(o.d, tol);
    out << "d: " << o.d << '\n';
    for (std::size_t i = 0; i < classes.size(); ++i) {
        out << "class " << i + 1 << ":";
        for (const auto& m : classes[i].members) out << ' ' << m.to_string();
        out << '\n';
        print_grid(out, "  canonical form", classes[i].canonical);
    }
    out << "classes: " << classes.size() << '\n';
    return exit_code::success;
}

int cmd_canon(const Options& o, std::ostream& out) {
    const auto g = read_generator(o.file1, false);
    print_grid(out, "canonical form", canonical_form(g.entries));
    return exit_code::success;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Maximally entangled bases from group characters: construction, verification, equivalence", "mebtool"};
    app.require_subcommand(1);
    Options o;

    auto* decomp = app.add_subcommand("decomp", "List the decompositions of d");
    decomp->add_option("d", o.d, "Dimension (>= 2)")->required();

    auto* gen = app.add_subcommand("gen", "Emit a generator matrix");
    auto* gen_decomp = gen->add_option("--decomp", o.decomp, "Character generator for a decomposition, e.g. 2x3");
    auto* gen_dft = gen->add_option("--dft", o.dft, "DFT generator of dimension d");
    auto* gen_had = gen->add_option("--hadamard", o.hadamard, "Sylvester-Hadamard generator on 2^n");
    gen_decomp->excludes(gen_dft)->excludes(gen_had);
    gen_dft->excludes(gen_had);
    gen->add_option("--out", o.out_path, "Output file (stdout when absent)");

    auto* basis = app.add_subcommand("basis", "Emit all d^2 MEB states of a generator");
    basis->add_option("--gen", o.gen_path, "Generator file")->required();
    basis->add_option("--out", o.out_path, "Output file (stdout when absent)");
    basis->add_flag("--no-verify", o.no_verify, "Skip the Zeilinger check on the input");
    basis->add_option("--tol", o.tol, "Tolerance");

    auto* verify = app.add_subcommand("verify", "Verify a generator or basis");
    auto* v_gen = verify->add_option("--gen", o.gen_path, "Generator file");
    auto* v_basis = verify->add_option("--basis", o.basis_path, "Basis file");
    v_gen->excludes(v_basis);
    verify->add_option("--tol", o.tol, "Tolerance");

    auto* equiv = app.add_subcommand("equiv", "Decide equivalence of the MEBs of two generators");
    equiv->add_option("file1", o.file1, "First generator")->required();
    equiv->add_option("file2", o.file2, "Second generator")->required();
    equiv->add_flag("--oracle", o.oracle, "Cross-check with the exhaustive monomial search");
    equiv->add_flag("--witness", o.witness, "Construct the bilocal witness U1 (x) U2");
    equiv->add_option("--tol", o.tol, "Tolerance");

    auto* classes = app.add_subcommand("classes", "Enumerate equivalence classes over all decompositions of d");
    classes->add_option("d", o.d, "Dimension (2..12)")->required();
    classes->add_option("--tol", o.tol, "Tolerance");

    auto* canon = app.add_subcommand("canon", "Print the canonical form of a generator");
    canon->add_option("file", o.file1, "Generator file")->required();

    std::vector<std::string> storage;
    storage.reserve(args.size() + 1);
    storage.emplace_back("mebtool");
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : storage) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_code::success;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return exit_code::usage;
    }

    try {
        if (*gen && o.decomp.empty() && !o.dft && !o.hadamard) {
            err << "error: gen needs one of --decomp, --dft, --hadamard\n\n" << gen->help();
            return exit_code::usage;
        }
        if (*verify && o.gen_path.empty() && o.basis_path.empty()) {
            err << "error: verify needs --gen or --basis\n\n" << verify->help();
            return exit_code::usage;
        }
        if (*decomp) return cmd_decomp(o, out);
        if (*gen) return cmd_gen(o, out);
        if (*basis) return cmd_basis(o, out);
        if (*verify) return cmd_verify(o, out);
        if (*equiv) return cmd_equiv(o, out, err);
        if (*classes) return cmd_classes(o, out);
        if (*canon) return cmd_canon(o, out);
    } catch (const Discrepancy& e) {
        err << "internal discrepancy: " << e.what() << '\n';
        return exit_code::discrepancy;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::usage;
    }
    return exit_code::usage;
}

} // namespace meb::io
