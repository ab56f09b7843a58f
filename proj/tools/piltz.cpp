// piltz: Dedekind-zeta divisor sums, their error terms, the smoothed
// Voronoi-type identity, resonance lower-bound searches, and the associated
// omega-exponents, driven by small JSON field configs.
//
// Exit codes: 0 success, 1 configuration error, 2 computation error.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "piltz/acceptance.hpp"
#include "piltz/config.hpp"
#include "piltz/resonance.hpp"
#include "piltz/voronoi.hpp"

using nlohmann::json;
using namespace piltz;

namespace {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

config::FieldConfig load_config(const std::string& path) {
    try {
        return config::load_field_config(path);
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw error("cannot open output file " + out_path);
    out << text;
}

u64 fnv1a(const std::string& s) {
    u64 h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

// sieve with an optional disk cache keyed by (label, k, N)
divisor::DivisorTable get_table(const nf::NumberFieldSpec& spec, int k, i64 N,
                                const std::string& cache_dir) {
    std::string path;
    if (!cache_dir.empty()) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%016llx_k%d_n%lld.tbl", fnv1a(spec.label),
                      k, (long long)N);
        path = cache_dir + "/" + buf;
        std::ifstream probe(path);
        if (probe.good()) {
            try {
                auto t = divisor::load_table(path);
                if (t.field_label == spec.label && t.k == k && t.N == N) return t;
            } catch (const std::exception&) {
                // fall through and re-sieve
            }
        }
    }
    auto t = divisor::sieve_divisors(spec, k, N);
    if (!path.empty()) {
        try {
            divisor::save_table(path, t);
        } catch (const std::exception&) {
            // cache write failures are not fatal
        }
    }
    return t;
}

json densities_to_json(const nf::DensityVector& dv) {
    json j;
    j["R"] = dv.R;
    switch (dv.source) {
        case nf::DensitySource::exact_group: j["source"] = "exact-group"; break;
        case nf::DensitySource::empirical: j["source"] = "empirical"; break;
        default: j["source"] = "user-supplied"; break;
    }
    json deltas = json::object();
    for (int nu = 0; nu <= dv.m; ++nu) {
        json entry;
        entry["value"] = dv.deltas[nu];
        if (!dv.deltas_exact.empty())
            entry["exact"] = dv.deltas_exact[nu].str();
        deltas[std::to_string(nu)] = entry;
    }
    j["deltas"] = deltas;
    if (dv.source == nf::DensitySource::empirical)
        j["analyzed_primes"] = dv.analyzed_primes;
    return j;
}

nf::DensityVector densities_for(const config::FieldConfig& fc, i64 bound,
                                const std::string& densities_file) {
    if (!densities_file.empty()) {
        std::ifstream in(densities_file);
        if (!in) throw ConfigError("cannot open densities file " + densities_file);
        json j = json::parse(in, nullptr, false);
        if (j.is_discarded() || !j.contains("deltas"))
            throw ConfigError("densities file must be JSON with a \"deltas\" map");
        nf::DensityVector dv;
        dv.m = fc.spec.m;
        dv.deltas.assign(fc.spec.m + 1, 0.0);
        dv.source = nf::DensitySource::user_supplied;
        for (auto& [key, val] : j["deltas"].items()) {
            int nu = std::stoi(key);
            if (nu < 0 || nu > fc.spec.m)
                throw ConfigError("densities file: nu out of range");
            dv.deltas[nu] = val.get<double>();
            if (nu >= 1 && dv.deltas[nu] > 0.0) ++dv.R;
        }
        return dv;
    }
    if (fc.galois_generators)
        return nf::densities_from_group(*fc.galois_generators);
    return nf::estimate_densities(fc.spec, bound);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Piltz divisor computations over number fields"};
    app.require_subcommand(1);

    int threads = 1;
    std::string cache_dir;
    if (const char* env = std::getenv("PILTZ_CACHE_DIR")) cache_dir = env;
    app.add_option("--threads", threads, "worker thread cap (default 1)");
    app.add_option("--cache-dir", cache_dir,
                   "divisor-table cache directory (env PILTZ_CACHE_DIR)");

    std::string cfg_path, out_path, report_fmt = "json", densities_file;
    i64 bound = 100000, table_n = 1000000, n_range = 100, terms = 0,
        grid = 200000, pool_bound = 200000;
    int k = 1, order = 2;
    double xval = 10.0, alpha = 0.0, c1 = 1.0, cap_x = 1000.0;
    bool exact = false;

    auto* c_field = app.add_subcommand("field", "inspect a field config");
    c_field->add_option("config", cfg_path)->required();
    c_field->add_option("--out", out_path);

    auto* c_dens = app.add_subcommand("densities", "Dirichlet densities");
    c_dens->add_option("config", cfg_path)->required();
    c_dens->add_option("--bound", bound, "prime bound for the empirical count");
    c_dens->add_flag("--exact", exact, "use the configured Galois generators");
    c_dens->add_option("--out", out_path);

    auto* c_div = app.add_subcommand("divisors", "sieve d_K^(k)(n), emit CSV");
    c_div->add_option("config", cfg_path)->required();
    c_div->add_option("--k", k)->required();
    c_div->add_option("--n", n_range)->required();
    c_div->add_option("--out", out_path);

    auto* c_main = app.add_subcommand("mainterm", "Laurent data and main term");
    c_main->add_option("config", cfg_path)->required();
    c_main->add_option("--k", k)->required();
    c_main->add_option("--order", order);
    c_main->add_option("--table-n", table_n);
    c_main->add_option("--out", out_path);

    auto* c_delta = app.add_subcommand("delta", "error term at a point");
    c_delta->add_option("config", cfg_path)->required();
    c_delta->add_option("--k", k)->required();
    c_delta->add_option("--x", xval)->required();
    c_delta->add_option("--table-n", table_n);
    c_delta->add_option("--out", out_path);

    auto* c_vor = app.add_subcommand("voronoi", "smoothed identity, both sides");
    c_vor->add_option("config", cfg_path)->required();
    c_vor->add_option("--k", k)->required();
    c_vor->add_option("--x", xval)->required();
    c_vor->add_option("--alpha", alpha)->required();
    c_vor->add_option("--terms", terms);
    c_vor->add_option("--table-n", table_n, "range of the k=1 Laurent table");
    c_vor->add_option("--report", report_fmt)
        ->check(CLI::IsMember({"json", "csv"}));
    c_vor->add_option("--out", out_path);

    auto* c_res = app.add_subcommand("resonate", "resonance search");
    c_res->add_option("config", cfg_path)->required();
    c_res->add_option("--k", k)->required();
    c_res->add_option("--X", cap_x)->required();
    c_res->add_option("--C1", c1);
    c_res->add_option("--grid", grid);
    c_res->add_option("--alpha", alpha, "resonator scale (default: calibrated)");
    c_res->add_option("--pool-bound", pool_bound);
    c_res->add_option("--bound", bound, "prime bound for empirical densities");
    c_res->add_option("--out", out_path);

    auto* c_exp = app.add_subcommand("exponents", "omega exponents");
    c_exp->add_option("config", cfg_path)->required();
    c_exp->add_option("--k", k)->required();
    c_exp->add_option("--densities", densities_file, "user-supplied density JSON");
    c_exp->add_option("--bound", bound);
    c_exp->add_option("--out", out_path);

    auto* c_verify = app.add_subcommand("verify-all", "run the acceptance battery");
    c_verify->add_option("--out", out_path);

    CLI11_PARSE(app, argc, argv);
    set_max_threads(threads);

    try {
        if (c_field->parsed()) {
            auto fc = load_config(cfg_path);
            json j;
            j["label"] = fc.spec.label;
            j["m"] = fc.spec.m;
            j["r1"] = fc.spec.r1;
            j["r2"] = fc.spec.r2;
            j["disc_f"] = fc.spec.disc_f;
            j["D"] = fc.spec.D;
            j["index_sq_divisors"] = fc.spec.index_sq_divisors;
            emit(j.dump(2) + "\n", out_path);
        } else if (c_dens->parsed()) {
            auto fc = load_config(cfg_path);
            nf::DensityVector dv;
            if (exact) {
                if (!fc.galois_generators)
                    throw ConfigError("--exact requires galois_generators in the config");
                dv = nf::densities_from_group(*fc.galois_generators);
            } else {
                dv = nf::estimate_densities(fc.spec, bound);
            }
            emit(densities_to_json(dv).dump(2) + "\n", out_path);
        } else if (c_div->parsed()) {
            auto fc = load_config(cfg_path);
            auto t = get_table(fc.spec, k, n_range, cache_dir);
            std::string csv = "n,d\n";
            for (i64 n = 1; n <= t.N; ++n)
                csv += std::to_string(n) + "," + std::to_string(t.at(n)) + "\n";
            emit(csv, out_path);
        } else if (c_main->parsed()) {
            auto fc = load_config(cfg_path);
            auto t1 = get_table(fc.spec, 1, table_n, cache_dir);
            auto le = mainterm::laurent_coeffs(fc.spec, t1, std::max(order, k));
            auto poly = mainterm::main_term_poly(fc.spec, le, k);
            json j;
            j["laurent"]["order"] = le.order;
            j["laurent"]["c"] = le.c;
            j["laurent"]["est_error"] = le.est_error;
            j["main_term_poly"]["k"] = poly.k;
            j["main_term_poly"]["b"] = poly.b;
            if (fc.class_number_data)
                j["class_number_residue"] =
                    config::class_number_residue(fc.spec, *fc.class_number_data);
            emit(j.dump(2) + "\n", out_path);
        } else if (c_delta->parsed()) {
            auto fc = load_config(cfg_path);
            auto t1 = get_table(fc.spec, 1, table_n, cache_dir);
            auto le = mainterm::laurent_coeffs(fc.spec, t1, std::max(2, k));
            i64 need = (i64)std::ceil(xval) + 1;
            auto tk = (k == 1 && need <= table_n)
                          ? t1
                          : get_table(fc.spec, k, std::max(need, (i64)1000), cache_dir);
            json j;
            j["x"] = xval;
            j["summatory"] = divisor::summatory(tk, xval);
            j["main_term"] = mainterm::main_term(fc.spec, le, k, xval);
            j["delta"] = mainterm::delta(fc.spec, tk, le, k, xval);
            emit(j.dump(2) + "\n", out_path);
        } else if (c_vor->parsed()) {
            auto fc = load_config(cfg_path);
            auto p = voronoi::default_params(fc.spec, k, xval, alpha);
            if (terms > 0) p.n_terms = terms;
            double mk = (double)fc.spec.m * k;
            i64 need_lhs = (i64)std::ceil(std::pow(xval, mk) *
                                          std::exp(p.u_cutoff / xval)) + 1;
            i64 need = std::max(need_lhs, p.n_terms);
            auto t1 = get_table(fc.spec, 1, table_n, cache_dir);
            auto le = mainterm::laurent_coeffs(fc.spec, t1, std::max(2, k));
            auto tk = get_table(fc.spec, k, need, cache_dir);
            if (report_fmt == "json") {
                auto rep = voronoi::voronoi_discrepancy(fc.spec, tk, le, k, p);
                json j;
                j["x"] = p.x;
                j["alpha"] = p.alpha;
                j["u_cutoff"] = p.u_cutoff;
                j["quad_step"] = p.quad_step;
                j["n_terms"] = p.n_terms;
                j["lhs"] = rep.lhs;
                j["rhs"] = rep.rhs;
                j["abs_diff"] = rep.abs_diff;
                j["predicted_error_scale"] = rep.predicted_error_scale;
                j["predicted_error_scale_alt"] = rep.predicted_error_scale_alt;
                j["lhs_quad_error"] = rep.lhs_quad_error;
                j["rhs_last_term"] = rep.rhs_last_term;
                emit(j.dump(2) + "\n", out_path);
            } else {
                // per-term rows of the series for plotting
                double dk = std::pow((double)fc.spec.D, (double)k);
                double phase = (double)(k * fc.spec.r1 - 3) *
                               3.14159265358979323846 / 4.0;
                std::string csv = "n,d,amplitude,frequency,phase,term\n";
                for (i64 n = 1; n <= p.n_terms; ++n) {
                    u64 d = tk.values[n];
                    if (d == 0) continue;
                    double nd = (double)n;
                    double damping =
                        std::exp(-3.14159265358979323846 * 3.14159265358979323846 *
                                 std::pow(nd / (dk * alpha), 2.0 / mk));
                    double amp = (double)d *
                                 std::pow(nd, -(mk + 1.0) / (2.0 * mk)) * damping;
                    double freq = resonance::lambda_n(n, fc.spec, k);
                    double term = amp * std::cos(freq * xval + phase);
                    csv += std::to_string(n) + "," + std::to_string(d) + "," +
                           fmt_double(amp) + "," + fmt_double(freq) + "," +
                           fmt_double(phase) + "," + fmt_double(term) + "\n";
                }
                emit(csv, out_path);
            }
        } else if (c_res->parsed()) {
            auto fc = load_config(cfg_path);
            auto dv = densities_for(fc, bound, "");
            resonance::ResonatorConfig cfg;
            cfg.C1 = c1;
            cfg.k = k;
            cfg.X = cap_x;
            cfg.mu = resonance::default_mu(dv, fc.spec.m, k);
            cfg.theta = (double)(k * fc.spec.r1 - 3) *
                        3.14159265358979323846 / 4.0;
            auto pools = resonance::build_prime_pools(fc.spec, pool_bound);
            json j;
            resonance::ResonatorSet rset;
            if (alpha > 0.0) {
                cfg.alpha = alpha;
                rset = resonance::build_resonator(fc.spec, dv, cfg, pools);
                auto kappa_mu = resonance::choose_alpha(cap_x, dv, cfg.mu, 1.0);
                j["kappa"] = kappa_mu.kappa;
            } else {
                auto cal = resonance::calibrate_alpha(fc.spec, dv, cfg, pools);
                cfg.alpha = cal.choice.alpha;
                rset = cal.rset;
                j["C_k"] = cal.C_k;
                j["kappa"] = cal.choice.kappa;
            }
            i64 needed = (i64)std::ceil(std::pow(cap_x, cfg.A1)) + 1;
            auto tk = get_table(fc.spec, k, needed, cache_dir);
            auto res = resonance::resonance_search(fc.spec, tk, cfg, rset, grid);
            j["alpha"] = cfg.alpha;
            j["theta"] = cfg.theta;
            j["M_size"] = res.M_size;
            j["x_star"] = res.x_star;
            j["max_abs"] = res.max_abs;
            j["bound_rhs"] = res.bound_rhs;
            j["margin"] = res.margin;
            j["err_proxy_resonator"] = res.err_proxy_resonator;
            j["err_proxy_tail"] = res.err_proxy_tail;
            emit(j.dump(2) + "\n", out_path);
        } else if (c_exp->parsed()) {
            auto fc = load_config(cfg_path);
            auto dv = densities_for(fc, bound, densities_file);
            auto e = resonance::exponents(fc.spec.m, fc.spec.r1, k, dv);
            json j;
            j["beta"] = e.beta;
            j["gamma"] = e.gamma;
            j["gamma_exact"] = e.gamma_rat.str();
            j["kappa"] = e.kappa;
            j["mu"] = e.mu_half_R;
            j["beta_gkmn"] = e.beta_gkmn;
            j["gamma_gkmn"] = e.gamma_gkmn;
            j["gamma_gkmn_exact"] = e.gamma_gkmn_rat.str();
            j["beta_hafner"] = e.beta_hafner;
            j["sign_class"] = resonance::sign_class_name(e.sign_class);
            emit(j.dump(2) + "\n", out_path);
        } else if (c_verify->parsed()) {
            auto report = acceptance::run_all();
            emit(acceptance::render(report), out_path);
            return report.all_pass ? 0 : 2;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "computation error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
