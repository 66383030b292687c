#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qpg/errors.hpp"
#include "qpg/fusion.hpp"
#include "qpg/hopf_image.hpp"
#include "qpg/invariants.hpp"
#include "qpg/latin.hpp"
#include "qpg/models.hpp"
#include "qpg/partitions.hpp"
#include "qpg/version.hpp"
#include "qpg/weingarten.hpp"

namespace {

using nlohmann::ordered_json;
using clock_type = std::chrono::steady_clock;

double elapsed(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

std::string fmt_tol(double t) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", t);
    return buf;
}

std::string fmt_seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", s);
    return buf;
}

std::string dot_join(const std::vector<int>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "." : "") + std::to_string(v[i]);
    return s;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    if (s.empty()) return out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw qpg::validation_error("bad integer list entry '" + tok + "'");
        out.push_back(v);
    }
    return out;
}

// One row of the fixed CSV schema:
// statement, params, dim_lhs, dim_rhs, verdict, tol, backend, seconds.
struct ReportRow {
    std::string statement;
    std::string params;
    long long dim_lhs = 0;
    long long dim_rhs = 0;
    std::string verdict;
    double tol = 0.0;
    std::string backend;
    double seconds = 0.0;
};

struct Report {
    std::string command;
    ordered_json config = ordered_json::object();
    std::vector<ReportRow> rows;
    std::vector<ordered_json> details;
    bool deterministic = false;

    void add(ReportRow row, ordered_json detail) {
        if (deterministic) row.seconds = 0.0;
        rows.push_back(std::move(row));
        details.push_back(std::move(detail));
    }

    std::string config_line() const {
        std::string s = command;
        for (const auto& [key, val] : config.items()) s += " " + key + "=" + val.dump();
        return s;
    }

    void write_csv(const std::string& path) const {
        std::ofstream f(path);
        if (!f) throw qpg::validation_error("cannot open CSV output '" + path + "'");
        f << "# qpg " << qpg::version << "\n";
        f << "# config: " << config_line() << "\n";
        f << "statement,params,dim_lhs,dim_rhs,verdict,tol,backend,seconds\n";
        for (const auto& r : rows)
            f << r.statement << ',' << r.params << ',' << r.dim_lhs << ',' << r.dim_rhs << ','
              << r.verdict << ',' << fmt_tol(r.tol) << ',' << r.backend << ','
              << fmt_seconds(r.seconds) << "\n";
    }

    void write_json(const std::string& path) const {
        ordered_json j;
        j["version"] = qpg::version;
        j["command"] = command;
        j["config"] = config;
        auto arr = ordered_json::array();
        for (size_t i = 0; i < rows.size(); ++i) {
            ordered_json r;
            r["statement"] = rows[i].statement;
            r["params"] = rows[i].params;
            r["dim_lhs"] = rows[i].dim_lhs;
            r["dim_rhs"] = rows[i].dim_rhs;
            r["verdict"] = rows[i].verdict;
            r["tol"] = rows[i].tol;
            r["backend"] = rows[i].backend;
            r["seconds"] = deterministic ? 0.0 : rows[i].seconds;
            if (!details[i].is_null()) r["detail"] = details[i];
            arr.push_back(std::move(r));
        }
        j["rows"] = arr;
        std::ofstream f(path);
        if (!f) throw qpg::validation_error("cannot open JSON output '" + path + "'");
        f << j.dump(2) << "\n";
    }
};

// Exit codes: 0 all certificates positive, 2 verified negative findings,
// 1 errors or inconclusive outcomes.
int settle_exit(bool any_inconclusive, bool any_negative) {
    if (any_inconclusive) return 1;
    if (any_negative) return 2;
    return 0;
}

qpg::AnyModel load_model(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw qpg::validation_error("cannot open model file '" + path + "'");
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::exception& e) {
        throw qpg::validation_error("model file '" + path + "' is not valid JSON: " + e.what());
    }
    return qpg::model_from_json(j);
}

void write_output(const ordered_json& j, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream f(path);
    if (!f) throw qpg::validation_error("cannot open output file '" + path + "'");
    f << j.dump(2) << "\n";
    std::cout << "wrote " << path << "\n";
}

ReportRow certificate_row(const qpg::Certificate& c, double seconds) {
    ReportRow row;
    row.statement = c.statement;
    std::string p = "N=" + std::to_string(c.N);
    if (c.M >= 0) p += ";M=" + std::to_string(c.M);
    if (c.s >= 0) p += ";s=" + std::to_string(c.s);
    if (c.k >= 0) p += ";k=" + std::to_string(c.k);
    if (c.s >= 0) p += ";word=" + dot_join(c.word);
    row.params = p;
    row.dim_lhs = c.dim_lhs;
    row.dim_rhs = c.dim_rhs;
    row.verdict = qpg::verdict_str(c.verdict);
    row.tol = c.tol;
    row.backend = c.backend;
    row.seconds = seconds;
    return row;
}

int run_topgen(int N, int M, int kmax, double tol, const std::string& csv, const std::string& json,
               bool deterministic) {
    Report rep;
    rep.command = "topgen";
    rep.deterministic = deterministic;
    rep.config = {{"N", N}, {"M", M}, {"kmax", kmax}, {"tol", tol}};
    bool inconclusive = false, negative = false;
    std::cout << "topgen sweep N=" << N << " M=" << M << " k=1.." << kmax << "\n";
    for (int k = 1; k <= kmax; ++k) {
        auto t0 = clock_type::now();
        qpg::Certificate c = qpg::topgen_certificate(N, M, k, tol);
        double secs = elapsed(t0);
        rep.add(certificate_row(c, secs), qpg::to_json(c));
        std::cout << "  k=" << k << "  dim_lhs=" << c.dim_lhs << "  dim_rhs=" << c.dim_rhs << "  "
                  << qpg::verdict_str(c.verdict) << "\n";
        if (c.verdict == qpg::Verdict::INCONCLUSIVE) inconclusive = true;
        if (c.verdict == qpg::Verdict::STRICTLY_LARGER) negative = true;
    }
    if (!csv.empty()) rep.write_csv(csv);
    if (!json.empty()) rep.write_json(json);
    std::cout << (negative ? "verdict: defect found" : inconclusive ? "verdict: inconclusive"
                                                                    : "verdict: EQUAL at every degree")
              << "\n";
    return settle_exit(inconclusive, negative);
}

int run_refl_topgen(int N, int s, int kmax, const std::string& word_arg, double tol,
                    const std::string& csv, const std::string& json, bool deterministic) {
    Report rep;
    rep.command = "refl-topgen";
    rep.deterministic = deterministic;
    rep.config = {{"N", N}, {"s", s}, {"tol", tol}};
    std::vector<std::vector<int>> words;
    if (!word_arg.empty()) {
        words.push_back(parse_int_list(word_arg));
        rep.config["word"] = word_arg;
    } else {
        rep.config["kmax"] = kmax;
        for (int len = 0; len <= kmax; ++len) {
            std::vector<int> w(static_cast<size_t>(len), 0);
            while (true) {
                words.push_back(w);
                int t = len - 1;
                while (t >= 0 && w[static_cast<size_t>(t)] == s - 1) w[static_cast<size_t>(t--)] = 0;
                if (t < 0) break;
                ++w[static_cast<size_t>(t)];
            }
        }
    }
    bool inconclusive = false, negative = false;
    std::cout << "refl-topgen sweep N=" << N << " s=" << s << " (" << words.size() << " words)\n";
    for (const auto& w : words) {
        auto t0 = clock_type::now();
        qpg::Certificate c = qpg::reflection_topgen_certificate(N, qpg::ColoredWord(s, w), tol);
        double secs = elapsed(t0);
        rep.add(certificate_row(c, secs), qpg::to_json(c));
        std::cout << "  word=(" << qpg::word_str(w) << ")  dim_lhs=" << c.dim_lhs
                  << "  dim_rhs=" << c.dim_rhs << "  " << qpg::verdict_str(c.verdict) << "\n";
        if (c.verdict == qpg::Verdict::INCONCLUSIVE) inconclusive = true;
        if (c.verdict == qpg::Verdict::STRICTLY_LARGER) negative = true;
    }
    if (!csv.empty()) rep.write_csv(csv);
    if (!json.empty()) rep.write_json(json);
    std::cout << (negative ? "verdict: defect found" : inconclusive ? "verdict: inconclusive"
                                                                    : "verdict: EQUAL for every word")
              << "\n";
    return settle_exit(inconclusive, negative);
}

int run_haar(int N, const std::string& rows_arg, const std::string& cols_arg, int k,
             const std::string& json_path) {
    if (!rows_arg.empty() || !cols_arg.empty()) {
        std::vector<int> rows = parse_int_list(rows_arg);
        std::vector<int> cols = parse_int_list(cols_arg);
        if (rows.size() != cols.size())
            throw qpg::domain_error("haar: --rows and --cols must have equal length");
        if (rows.empty()) throw qpg::domain_error("haar: empty index lists");
        for (int v : rows)
            if (v < 1 || v > N) throw qpg::domain_error("haar: row index out of range 1..N");
        for (int v : cols)
            if (v < 1 || v > N) throw qpg::domain_error("haar: column index out of range 1..N");
        // CLI indices are 1-based; the library is 0-based.
        for (int& v : rows) --v;
        for (int& v : cols) --v;
        qpg::Rat h = qpg::haar_moment(N, rows, cols);
        std::cout << "h = " << qpg::rat_str(h) << " (" << qpg::rat_double(h) << ")\n";
        if (!json_path.empty()) {
            ordered_json j;
            j["version"] = qpg::version;
            j["command"] = "haar";
            j["config"] = {{"N", N}, {"rows", rows_arg}, {"cols", cols_arg}};
            j["moment"] = qpg::rat_str(h);
            j["moment_double"] = qpg::rat_double(h);
            write_output(j, json_path);
        }
        return 0;
    }
    if (k < 0) throw qpg::domain_error("haar: pass either --rows/--cols or --k");
    const qpg::WeingartenTable& table = qpg::weingarten_table(k, N);
    int dim = qpg::haar_fix_dimension(k, N);
    std::cout << "k=" << k << " N=" << N << "  |NC(k)|=" << table.order.size()
              << "  fix_dim=" << dim << "\n";
    if (!json_path.empty()) {
        ordered_json j;
        j["version"] = qpg::version;
        j["command"] = "haar";
        j["config"] = {{"N", N}, {"k", k}};
        j["fix_dim"] = dim;
        auto order = ordered_json::array();
        for (const auto& p : table.order) order.push_back(p.rgs_string());
        j["order"] = order;
        auto dump_mat = [&](const qpg::RatMatrix& m) {
            auto rows = ordered_json::array();
            for (int r = 0; r < m.rows; ++r) {
                auto row = ordered_json::array();
                for (int c = 0; c < m.cols; ++c) row.push_back(qpg::rat_str(m.at(r, c)));
                rows.push_back(row);
            }
            return rows;
        };
        j["gram"] = dump_mat(table.gram);
        j["weingarten"] = dump_mat(table.wg);
        write_output(j, json_path);
    }
    return 0;
}

qpg::LatinSquare latin_from_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw qpg::validation_error("cannot open Latin square file '" + path + "'");
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::exception& e) {
        throw qpg::validation_error("Latin square file is not valid JSON: " + std::string(e.what()));
    }
    if (!j.is_array() || j.empty()) throw qpg::validation_error("Latin square file: expected array of rows");
    qpg::LatinSquare L;
    L.N = static_cast<int>(j.size());
    for (const auto& row : j) {
        if (!row.is_array() || static_cast<int>(row.size()) != L.N)
            throw qpg::validation_error("Latin square file: ragged rows");
        std::vector<int> r;
        for (const auto& v : row) r.push_back(v.get<int>());
        L.cells.push_back(std::move(r));
    }
    qpg::validate_square(L);
    return L;
}

int run_build_model(const std::string& kind, int N, int M, const std::string& latin_path,
                    bool deform, int glue_N, const std::vector<std::string>& sum_paths,
                    const std::string& out, const std::string& emit_latin) {
    qpg::LatinSquare L;
    if (!latin_path.empty()) {
        L = latin_from_json_file(latin_path);
    } else if (kind == "corner-swap") {
        L = qpg::corner_swap_square(N);
    } else if (kind == "circulant") {
        if (M < 1) throw qpg::domain_error("build-model: circulant kind needs --M");
        L = qpg::circulant_corner_square(N, M);
    } else if (kind == "generating") {
        L = qpg::sn_generating_square(N);
    } else {
        throw qpg::domain_error("build-model: unknown kind '" + kind +
                                "' (expected corner-swap, circulant or generating)");
    }
    if (!emit_latin.empty()) {
        ordered_json lj = ordered_json::array();
        for (const auto& row : L.cells) lj.push_back(row);
        write_output(lj, emit_latin);
    }
    qpg::FlatModel flat = qpg::from_latin(L);
    if (deform) flat = qpg::deform_corner_2x2(flat);
    if (glue_N > 0) flat = qpg::glue_corner(flat, glue_N);
    if (!sum_paths.empty()) {
        std::vector<qpg::MagicUnitary> parts{flat.to_magic()};
        for (const auto& p : sum_paths) parts.push_back(qpg::to_magic(load_model(p)));
        qpg::MagicUnitary total = qpg::direct_sum(parts);
        qpg::ValidationReport v = qpg::validate(total);
        if (!v.ok) throw qpg::validation_error("build-model: constructed model fails validation");
        write_output(qpg::to_json(total), out);
        return 0;
    }
    qpg::ValidationReport v = qpg::validate(flat);
    if (!v.ok) throw qpg::validation_error("build-model: constructed model fails validation");
    write_output(qpg::to_json(flat), out);
    return 0;
}

void print_validation(const qpg::ValidationReport& rep) {
    for (const auto& c : rep.checks) {
        std::printf("  %-18s worst=%.3e  %s%s%s\n", c.name.c_str(), c.worst,
                    c.pass ? "pass" : "FAIL", c.detail.empty() ? "" : "  ", c.detail.c_str());
    }
}

int run_check_model(const std::string& path, double tol) {
    qpg::AnyModel any = load_model(path);
    qpg::MagicUnitary m = qpg::to_magic(any);
    qpg::ValidationReport rep;
    if (std::holds_alternative<qpg::FlatModel>(any))
        rep = qpg::validate(std::get<qpg::FlatModel>(any), tol);
    else
        rep = qpg::validate(m, tol);
    std::cout << "model N=" << m.size() << " d=" << m.fiber_dim() << "\n";
    print_validation(rep);
    std::cout << "classical: " << (qpg::is_classical(m, tol) ? "yes" : "no") << "\n";
    if (!rep.ok) {
        std::cout << "model invalid\n";
        return 1;
    }
    std::cout << "model valid\n";
    return 0;
}

int run_describe(const std::string& path) {
    qpg::AnyModel any = load_model(path);
    qpg::MagicUnitary m = qpg::to_magic(any);
    bool flat = std::holds_alternative<qpg::FlatModel>(any);
    std::cout << "N: " << m.size() << "\nd: " << m.fiber_dim() << "\nflat: " << (flat ? "yes" : "no")
              << "\nprovenance: " << m.provenance << "\n";
    std::cout << "classical: " << (qpg::is_classical(m) ? "yes" : "no")
              << " (max commutator norm " << qpg::max_commutator_norm(m) << ")\n";
    if (flat) {
        // Row/column Gram matrices of the defining unit vectors; a valid flat
        // model has every one equal to the identity.
        const qpg::FlatModel& fm = std::get<qpg::FlatModel>(any);
        int N = fm.size();
        double worst_row = 0, worst_col = 0;
        int arg_row = 0, arg_col = 0;
        for (int i = 0; i < N; ++i) {
            Eigen::MatrixXcd G(N, N), H(N, N);
            for (int a = 0; a < N; ++a)
                for (int b = 0; b < N; ++b) {
                    G(a, b) = fm.vec(i, a).dot(fm.vec(i, b));
                    H(a, b) = fm.vec(a, i).dot(fm.vec(b, i));
                }
            Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(N, N);
            double dr = qpg::spectral_norm(G - id), dc = qpg::spectral_norm(H - id);
            if (dr > worst_row) { worst_row = dr; arg_row = i; }
            if (dc > worst_col) { worst_col = dc; arg_col = i; }
        }
        std::printf("row Gram deviation:    worst %.3e (row %d)\n", worst_row, arg_row);
        std::printf("column Gram deviation: worst %.3e (column %d)\n", worst_col, arg_col);
    } else {
        qpg::ValidationReport rep = qpg::validate(m);
        print_validation(rep);
    }
    return 0;
}

int run_inner_faithful(const std::string& path, int rmax, double tol, const std::string& method,
                       const std::string& csv, const std::string& json, bool deterministic) {
    qpg::FixMethod fm = qpg::FixMethod::eigen;
    if (method == "cesaro") fm = qpg::FixMethod::cesaro;
    else if (method != "eigen") throw qpg::domain_error("inner-faithful: --method must be eigen or cesaro");
    qpg::MagicUnitary m = qpg::to_magic(load_model(path));
    qpg::FaithfulnessReport rep = qpg::inner_faithfulness_report(m, rmax, tol, fm);

    Report out;
    out.command = "inner-faithful";
    out.deterministic = deterministic;
    out.config = {{"model", path}, {"N", rep.N}, {"rmax", rmax}, {"tol", tol}, {"method", method}};
    std::string backend = std::string("float64/") + (fm == qpg::FixMethod::eigen ? "schur" : "cesaro");
    std::cout << "inner-faithful N=" << rep.N << " rmax=" << rmax << "\n";
    for (const auto& lvl : rep.levels) {
        ReportRow row;
        row.statement = "inner-faithful";
        row.params = "N=" + std::to_string(rep.N) + ";r=" + std::to_string(lvl.r);
        row.dim_lhs = lvl.fixed_dim;
        row.dim_rhs = lvl.target_dim;
        row.verdict = !lvl.conclusive ? "INCONCLUSIVE" : lvl.defect > 0 ? "STRICTLY_LARGER" : "EQUAL";
        row.tol = tol;
        row.backend = backend;
        row.seconds = lvl.seconds;
        ordered_json detail{{"r", lvl.r}, {"fixed_dim", lvl.fixed_dim},
                            {"target_dim", lvl.target_dim}, {"defect", lvl.defect},
                            {"conclusive", lvl.conclusive}};
        out.add(row, detail);
        std::cout << "  r=" << lvl.r << "  fixed_dim=" << lvl.fixed_dim
                  << "  target_dim=" << lvl.target_dim;
        if (!lvl.conclusive) std::cout << "  INCONCLUSIVE";
        std::cout << "\n";
    }
    if (!csv.empty()) out.write_csv(csv);
    if (!json.empty()) out.write_json(json);
    if (!rep.conclusive) {
        std::cout << "verdict: INCONCLUSIVE\n";
        return 1;
    }
    if (rep.fails_at > 0) {
        std::cout << "verdict: FAILS_AT(" << rep.fails_at << ")\n";
        return 2;
    }
    std::cout << "verdict: MATCHES_UP_TO(" << rmax << ")\n";
    return 0;
}

int run_fusion_multiply(int s, const std::string& f_arg, const std::string& g_arg, int N,
                        const std::string& json_path) {
    qpg::ColoredWord f(s, parse_int_list(f_arg)), g(s, parse_int_list(g_arg));
    qpg::FusionElement prod = qpg::multiply(f, g);
    std::cout << "x(" << qpg::word_str(f.letters) << ") * x(" << qpg::word_str(g.letters)
              << ") = " << qpg::fusion_str(prod) << "\n";
    if (N > 0) {
        long long lhs = qpg::dimension(f, N) * qpg::dimension(g, N);
        long long rhs = qpg::dimension(prod, N);
        std::cout << "dimension check at N=" << N << ": " << lhs << " = " << rhs << "\n";
        if (lhs != rhs) throw std::logic_error("fusion: dimension homomorphism violated");
    }
    if (!json_path.empty()) {
        ordered_json j;
        j["version"] = qpg::version;
        j["command"] = "fusion multiply";
        j["config"] = {{"s", s}, {"f", f_arg}, {"g", g_arg}};
        ordered_json terms = ordered_json::object();
        for (const auto& [w, c] : prod.terms) terms[qpg::word_str(w)] = c;
        j["terms"] = terms;
        write_output(j, json_path);
    }
    return 0;
}

int run_fusion_selftest(unsigned seed, int triples, int pairs) {
    std::mt19937 rng(seed);
    auto random_word = [&](int s, int maxlen) {
        std::uniform_int_distribution<int> len_d(0, maxlen), let_d(0, s - 1);
        std::vector<int> w(static_cast<size_t>(len_d(rng)));
        for (int& x : w) x = let_d(rng);
        return w;
    };
    std::uniform_int_distribution<int> s_d(1, 4);
    for (int t = 0; t < triples; ++t) {
        int s = s_d(rng);
        qpg::FusionElement a = qpg::basis_element(qpg::ColoredWord(s, random_word(s, 4)));
        qpg::FusionElement b = qpg::basis_element(qpg::ColoredWord(s, random_word(s, 4)));
        qpg::FusionElement c = qpg::basis_element(qpg::ColoredWord(s, random_word(s, 4)));
        if (!(qpg::multiply(qpg::multiply(a, b), c) == qpg::multiply(a, qpg::multiply(b, c)))) {
            std::cout << "associativity FAILED at triple " << t << "\n";
            return 1;
        }
    }
    std::cout << "associativity: " << triples << " random triples pass\n";
    const int moduli[][2] = {{4, 2}, {4, 1}, {2, 1}, {6, 3}};
    for (int t = 0; t < pairs; ++t) {
        auto [st, s] = moduli[t % 4];
        qpg::ColoredWord f(st, random_word(st, 4)), g(st, random_word(st, 4));
        qpg::FusionElement lhs = qpg::restrict_mod(qpg::multiply(f, g), s);
        qpg::FusionElement rhs = qpg::multiply(qpg::restrict_mod(qpg::basis_element(f), s),
                                               qpg::restrict_mod(qpg::basis_element(g), s));
        if (!(lhs == rhs)) {
            std::cout << "restriction multiplicativity FAILED at pair " << t << "\n";
            return 1;
        }
    }
    std::cout << "restriction: " << pairs << " random pairs pass\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    if (const char* cap = std::getenv("QPERM_CAP")) {
        char* end = nullptr;
        long long v = std::strtoll(cap, &end, 10);
        if (end == cap || *end != '\0' || v <= 0) {
            std::cerr << "error: QPERM_CAP must be a positive integer, got '" << cap << "'\n";
            return 1;
        }
    }

    CLI::App app{"verification toolkit for quantum permutation and reflection group calculus"};
    app.set_version_flag("--version", std::string("qpg ") + qpg::version);
    app.require_subcommand(1);

    auto tol_check = CLI::Validator(
        [](std::string& s) {
            double v = 0;
            try {
                v = std::stod(s);
            } catch (...) {
                return std::string("tol must be a number");
            }
            if (!(v > 0.0 && v < 1e-2)) return std::string("tol must lie in (0, 0.01)");
            return std::string();
        },
        "TOL");

    int exit_code = 0;

    // topgen
    auto* tg = app.add_subcommand("topgen", "degree-by-degree topological generation certificates");
    int tg_N = 0, tg_M = 0, tg_kmax = 4;
    double tg_tol = 1e-8;
    std::string tg_csv, tg_json;
    bool tg_det = false;
    tg->add_option("--N", tg_N, "ambient dimension")->required();
    tg->add_option("--M", tg_M, "corner size")->required();
    tg->add_option("--kmax", tg_kmax, "largest tensor degree")->check(CLI::Range(1, 6));
    tg->add_option("--tol", tg_tol, "rank tolerance")->check(tol_check);
    tg->add_option("--csv", tg_csv, "CSV report path");
    tg->add_option("--json", tg_json, "JSON report path");
    tg->add_flag("--deterministic", tg_det, "zero the seconds column for byte-identical reports");
    tg->callback([&] { exit_code = run_topgen(tg_N, tg_M, tg_kmax, tg_tol, tg_csv, tg_json, tg_det); });

    // refl-topgen
    auto* rt = app.add_subcommand("refl-topgen", "reflection-group generation certificates (colored words)");
    int rt_N = 0, rt_s = 1, rt_kmax = 2;
    double rt_tol = 1e-8;
    std::string rt_word, rt_csv, rt_json;
    bool rt_det = false;
    rt->add_option("--N", rt_N, "ambient dimension")->required();
    rt->add_option("--s", rt_s, "color modulus")->required()->check(CLI::Range(1, 6));
    rt->add_option("--kmax", rt_kmax, "sweep all words of length <= kmax")->check(CLI::Range(0, 4));
    rt->add_option("--word", rt_word, "single comma-separated color word (overrides --kmax)");
    rt->add_option("--tol", rt_tol, "rank tolerance")->check(tol_check);
    rt->add_option("--csv", rt_csv, "CSV report path");
    rt->add_option("--json", rt_json, "JSON report path");
    rt->add_flag("--deterministic", rt_det, "zero the seconds column for byte-identical reports");
    rt->callback([&] {
        exit_code = run_refl_topgen(rt_N, rt_s, rt_kmax, rt_word, rt_tol, rt_csv, rt_json, rt_det);
    });

    // haar
    auto* ha = app.add_subcommand("haar", "Haar moments and Weingarten tables (indices 1-based)");
    int ha_N = 0, ha_k = -1;
    std::string ha_rows, ha_cols, ha_json;
    ha->add_option("--N", ha_N, "dimension")->required();
    ha->add_option("--rows", ha_rows, "row indices of the monomial, comma-separated, 1-based");
    ha->add_option("--cols", ha_cols, "column indices of the monomial, comma-separated, 1-based");
    ha->add_option("--k", ha_k, "export the degree-k Weingarten table instead")->check(CLI::Range(0, 6));
    ha->add_option("--json", ha_json, "JSON output path ('-' for stdout)");
    ha->callback([&] { exit_code = run_haar(ha_N, ha_rows, ha_cols, ha_k, ha_json); });

    // build-model
    auto* bm = app.add_subcommand("build-model", "construct flat matrix models from Latin squares");
    std::string bm_kind = "corner-swap", bm_latin, bm_out, bm_emit;
    int bm_N = 0, bm_M = 0, bm_glue = 0;
    bool bm_deform = false;
    std::vector<std::string> bm_sums;
    bm->add_option("--kind", bm_kind, "corner-swap, circulant or generating");
    bm->add_option("--N", bm_N, "square size");
    bm->add_option("--M", bm_M, "corner size (circulant kind)");
    bm->add_option("--latin", bm_latin, "JSON file with a Latin square (array of rows) to use instead");
    bm->add_flag("--deform", bm_deform, "replace the 2x2 corner with the noncommuting pair");
    bm->add_option("--glue", bm_glue, "embed as the corner of this larger size");
    bm->add_option("--sum", bm_sums, "model files to direct-sum with the built model");
    bm->add_option("-o,--out", bm_out, "output path (default stdout)");
    bm->add_option("--emit-latin", bm_emit, "also write the Latin square used, as JSON rows");
    bm->callback([&] {
        if (bm_latin.empty() && bm_N < 1)
            throw qpg::domain_error("build-model: --N is required unless --latin is given");
        exit_code = run_build_model(bm_kind, bm_N, bm_M, bm_latin, bm_deform, bm_glue, bm_sums,
                                    bm_out, bm_emit);
    });

    // check-model
    auto* cm = app.add_subcommand("check-model", "validate a model file against the magic unitary axioms");
    std::string cm_path;
    double cm_tol = 1e-8;
    cm->add_option("file", cm_path, "model JSON file")->required();
    cm->add_option("--tol", cm_tol, "validation tolerance")->check(tol_check);
    cm->callback([&] { exit_code = run_check_model(cm_path, cm_tol); });

    // describe
    auto* de = app.add_subcommand("describe", "print size, provenance, classicality and Gram summaries");
    std::string de_path;
    de->add_option("file", de_path, "model JSON file")->required();
    de->callback([&] { exit_code = run_describe(de_path); });

    // inner-faithful
    auto* inf = app.add_subcommand("inner-faithful", "level-by-level Hopf image fixed-space comparison");
    std::string inf_model, inf_method = "eigen", inf_csv, inf_json;
    int inf_rmax = 4;
    double inf_tol = 1e-8;
    bool inf_det = false;
    inf->add_option("--model", inf_model, "model JSON file")->required();
    inf->add_option("--rmax", inf_rmax, "largest monomial degree")->check(CLI::Range(1, 8));
    inf->add_option("--tol", inf_tol, "eigenvalue tolerance")->check(tol_check);
    inf->add_option("--method", inf_method, "eigen or cesaro");
    inf->add_option("--csv", inf_csv, "CSV report path");
    inf->add_option("--json", inf_json, "JSON report path");
    inf->add_flag("--deterministic", inf_det, "zero the seconds column for byte-identical reports");
    inf->callback([&] {
        exit_code = run_inner_faithful(inf_model, inf_rmax, inf_tol, inf_method, inf_csv, inf_json, inf_det);
    });

    // fusion
    auto* fu = app.add_subcommand("fusion", "free fusion ring computations");
    fu->require_subcommand(1);

    auto* fm = fu->add_subcommand("multiply", "expand a product of basis elements");
    int fm_s = 1, fm_N = 0;
    std::string fm_f, fm_g, fm_json;
    fm->add_option("--s", fm_s, "color modulus")->required()->check(CLI::Range(1, 12));
    fm->add_option("--f", fm_f, "left word, comma-separated letters (empty for the unit)");
    fm->add_option("--g", fm_g, "right word");
    fm->add_option("--N", fm_N, "also verify the dimension homomorphism at this N");
    fm->add_option("--json", fm_json, "JSON output path ('-' for stdout)");
    fm->callback([&] { exit_code = run_fusion_multiply(fm_s, fm_f, fm_g, fm_N, fm_json); });

    auto* fd = fu->add_subcommand("dim", "dimension of a basis element");
    int fd_s = 1, fd_N = 0;
    std::string fd_word;
    fd->add_option("--s", fd_s, "color modulus")->required()->check(CLI::Range(1, 12));
    fd->add_option("--word", fd_word, "comma-separated letters");
    fd->add_option("--N", fd_N, "dimension parameter, N >= 4")->required();
    fd->callback([&] {
        std::cout << qpg::dimension(qpg::ColoredWord(fd_s, parse_int_list(fd_word)), fd_N) << "\n";
        exit_code = 0;
    });

    auto* fi = fu->add_subcommand("involute", "involution of a word");
    int fi_s = 1;
    std::string fi_word;
    fi->add_option("--s", fi_s, "color modulus")->required()->check(CLI::Range(1, 12));
    fi->add_option("--word", fi_word, "comma-separated letters");
    fi->callback([&] {
        qpg::ColoredWord w = qpg::involute(qpg::ColoredWord(fi_s, parse_int_list(fi_word)));
        std::cout << "(" << qpg::word_str(w.letters) << ")\n";
        exit_code = 0;
    });

    auto* fr = fu->add_subcommand("restrict", "reduce a word's letters to a divisor modulus");
    int fr_s = 1, fr_to = 1;
    std::string fr_word;
    fr->add_option("--s", fr_s, "source modulus")->required()->check(CLI::Range(1, 12));
    fr->add_option("--to", fr_to, "target modulus (must divide --s)")->required();
    fr->add_option("--word", fr_word, "comma-separated letters");
    fr->callback([&] {
        qpg::ColoredWord w = qpg::restrict_mod(qpg::ColoredWord(fr_s, parse_int_list(fr_word)), fr_to);
        std::cout << "(" << qpg::word_str(w.letters) << ")\n";
        exit_code = 0;
    });

    auto* fs = fu->add_subcommand("selftest", "randomized ring property checks");
    unsigned fs_seed = 12345;
    int fs_triples = 500, fs_pairs = 200;
    fs->add_option("--seed", fs_seed, "RNG seed");
    fs->add_option("--triples", fs_triples, "associativity triples")->check(CLI::Range(1, 100000));
    fs->add_option("--pairs", fs_pairs, "restriction pairs")->check(CLI::Range(1, 100000));
    fs->callback([&] { exit_code = run_fusion_selftest(fs_seed, fs_triples, fs_pairs); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    } catch (const qpg::resource_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
