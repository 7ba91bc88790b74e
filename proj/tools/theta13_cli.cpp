// theta13 command-line interface.
//
// Subcommands:
//   gen         print a random Siegel matrix literal for a seed
//   theta       evaluate theta[c1,c2](v, Z) with certified tail
//   census      classify the sixteen 2-torsion points against C_A
//   translates  verify the nine kernel translates are pairwise distinct
//   product     verify the component decomposition at Z = diag(tau1, tau2)
//   smoothness  gradient statistics along C_A
//   trace       write sampled curve points as CSV
//   suite       run the full verification suite, JSON report on stdout
//
// Exit codes: 0 success / all checks passed, 1 verification failure,
// 2 invalid input or usage.  Z literals are "re+imi,re+imi,re+imi" for
// (z11, z12, z22); eps defaults to 1e-12 and can be set by THETA13_EPS or
// --eps (the flag wins).

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "theta13/theta13.hpp"

namespace {

using theta13::cdouble;
using theta13::cvec2;
using theta13::ordered_json;
using theta13::rvec2;
using theta13::SiegelMatrix;

// Parses a complex literal like "0.3+1.2i", "-i", "2.5", "1e-3-2e-2i".
cdouble parse_complex(std::string s) {
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw theta13::InvalidInput("empty complex literal");
    auto stod_all = [](const std::string& u) {
        std::size_t pos = 0;
        double x = std::stod(u, &pos);
        if (pos != u.size()) throw theta13::InvalidInput("bad numeric literal: " + u);
        return x;
    };
    if (t.back() != 'i') return {stod_all(t), 0.0};
    t.pop_back();
    // Split off the real part: the last +/- not preceded by an exponent 'e'.
    std::size_t split = std::string::npos;
    for (std::size_t i = t.size(); i-- > 1;) {
        if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    auto imag_of = [&](const std::string& u) {
        if (u.empty() || u == "+") return 1.0;
        if (u == "-") return -1.0;
        return stod_all(u);
    };
    if (split == std::string::npos) return {0.0, imag_of(t)};
    return {stod_all(t.substr(0, split)), imag_of(t.substr(split))};
}

SiegelMatrix parse_siegel(const std::string& s) {
    std::array<std::string, 3> parts;
    std::size_t start = 0;
    for (int i = 0; i < 3; ++i) {
        std::size_t comma = (i < 2) ? s.find(',', start) : std::string::npos;
        if (i < 2 && comma == std::string::npos)
            throw theta13::InvalidInput("Z literal needs three comma-separated entries");
        parts[i] = s.substr(start, comma - start);
        start = comma + 1;
    }
    return theta13::make_siegel(parse_complex(parts[0]), parse_complex(parts[1]),
                                parse_complex(parts[2]));
}

cvec2 parse_cvec2(const std::string& s, const char* what) {
    std::size_t comma = s.find(',');
    if (comma == std::string::npos)
        throw theta13::InvalidInput(std::string(what) + " needs two comma-separated entries");
    return {parse_complex(s.substr(0, comma)), parse_complex(s.substr(comma + 1))};
}

double default_eps() {
    if (const char* env = std::getenv("THETA13_EPS")) {
        try {
            double e = std::stod(env);
            if (e > 0) return e;
        } catch (...) {
        }
    }
    return 1e-12;
}

std::string format_complex(cdouble v) {
    char buf[80];
    std::snprintf(buf, sizeof(buf), "%.17g%+.17gi", v.real(), v.imag());
    return buf;
}

void emit(const ordered_json& doc, const std::string& out_path) {
    std::string text = doc.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw theta13::InvalidInput("cannot open output file: " + out_path);
        f << text;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"theta13: the (1,3) theta divisor on a polarised abelian surface"};
    app.require_subcommand(1);

    std::string z_str, v_str, char_str, tau1_str, tau2_str, out_path;
    std::uint64_t seed = 0;
    std::uint64_t random_seed = 0;
    int n = 100;
    double eps = default_eps();
    bool paranoid = false;

    auto* gen = app.add_subcommand("gen", "print a random Siegel matrix literal");
    gen->add_option("--seed", seed, "generator seed")->required();

    auto* theta = app.add_subcommand("theta", "evaluate theta[c1,c2](v, Z)");
    theta->add_option("--z", z_str, "Siegel matrix z11,z12,z22")->required();
    theta->add_option("--char", char_str, "characteristic c1a,c1b,c2a,c2b (default 0,0,0,0)");
    theta->add_option("--v", v_str, "argument v1,v2 (complex entries)")->required();
    theta->add_option("--eps", eps, "certified truncation error");

    auto* census = app.add_subcommand("census", "2-torsion census of C_A");
    census->add_option("--z", z_str, "Siegel matrix z11,z12,z22")->required();
    census->add_option("--eps", eps, "certified truncation error");

    auto* translates = app.add_subcommand("translates", "distinctness of the 9 kernel translates");
    translates->add_option("--z", z_str, "Siegel matrix z11,z12,z22")->required();
    translates->add_option("--seed", seed, "sampling seed");
    translates->add_option("--eps", eps, "certified truncation error");

    auto* product = app.add_subcommand("product", "component decomposition at diag(tau1, tau2)");
    product->add_option("--tau1", tau1_str, "first diagonal entry")->required();
    product->add_option("--tau2", tau2_str, "second diagonal entry")->required();
    product->add_option("--eps", eps, "certified truncation error");

    auto* smooth = app.add_subcommand("smoothness", "gradient statistics along C_A");
    smooth->add_option("--z", z_str, "Siegel matrix z11,z12,z22")->required();
    smooth->add_option("-n,--samples", n, "number of curve points");
    smooth->add_option("--seed", seed, "sampling seed");
    smooth->add_option("--eps", eps, "certified truncation error");

    auto* trace = app.add_subcommand("trace", "write sampled curve points as CSV");
    trace->add_option("--z", z_str, "Siegel matrix z11,z12,z22")->required();
    trace->add_option("-n,--samples", n, "number of curve points");
    trace->add_option("--seed", seed, "sampling seed");
    trace->add_option("-o,--out", out_path, "output CSV path")->required();
    trace->add_option("--eps", eps, "certified truncation error");

    auto* suite = app.add_subcommand("suite", "full verification suite");
    auto* zopt = suite->add_option("--z", z_str, "Siegel matrix z11,z12,z22");
    auto* ropt = suite->add_option("--random", random_seed, "draw Z from this seed");
    zopt->excludes(ropt);
    suite->add_option("--seed", seed, "sampling seed (defaults to the --random seed)");
    suite->add_option("--eps", eps, "certified truncation error");
    suite->add_flag("--paranoid", paranoid, "enable the oracle cross-check section");
    suite->add_option("-o,--out", out_path, "also write the report to this path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (gen->parsed()) {
            SiegelMatrix z = theta13::random_siegel(seed);
            std::cout << format_complex(z.z11) << "," << format_complex(z.z12) << ","
                      << format_complex(z.z22) << "\n";
            return 0;
        }

        if (theta->parsed()) {
            SiegelMatrix z = parse_siegel(z_str);
            theta13::RealCharacteristic ch{};
            if (!char_str.empty()) {
                std::array<double, 4> c{};
                std::size_t start = 0;
                for (int i = 0; i < 4; ++i) {
                    std::size_t comma = (i < 3) ? char_str.find(',', start) : std::string::npos;
                    if (i < 3 && comma == std::string::npos)
                        throw theta13::InvalidInput("--char needs four comma-separated entries");
                    c[i] = std::stod(char_str.substr(start, comma - start));
                    start = comma + 1;
                }
                ch = {{c[0], c[1]}, {c[2], c[3]}};
            }
            cvec2 v = parse_cvec2(v_str, "--v");
            theta13::ThetaValue t = theta13::classical_theta(z, ch, v, eps);
            ordered_json doc;
            doc["value"] = {t.value.real(), t.value.imag()};
            doc["abs"] = std::abs(t.value);
            doc["tail_bound"] = t.tail_bound;
            doc["radius_used"] = t.radius_used;
            emit(doc, "");
            return 0;
        }

        if (census->parsed()) {
            SiegelMatrix z = parse_siegel(z_str);
            ordered_json doc;
            try {
                theta13::CensusResult c = theta13::two_torsion_census(z, eps);
                doc["on_count"] = static_cast<int>(c.on_points.size());
                doc["off_count"] = static_cast<int>(c.off_points.size());
                doc["scale"] = c.scale;
                doc["threshold"] = c.threshold;
                doc["separation_ratio"] = theta13::detail::json_real(c.separation_ratio);
                ordered_json pts = ordered_json::array();
                auto chars = theta13::two_torsion_points();
                for (std::size_t i = 0; i < chars.size(); ++i) {
                    pts.push_back({{"c1", {chars[i].c1[0], chars[i].c1[1]}},
                                   {"c2", {chars[i].c2[0], chars[i].c2[1]}},
                                   {"abs_theta", std::abs(c.values[i].value)},
                                   {"on_curve", c.on_flags[i] == 1},
                                   {"parity", theta13::parity(chars[i])}});
                }
                doc["points"] = pts;
                emit(doc, "");
                return (c.on_points.size() == 10) ? 0 : 1;
            } catch (const theta13::SeparationFailure& e) {
                doc["separation_failure"] = true;
                doc["message"] = e.what();
                doc["magnitudes"] = e.raw_magnitudes;
                emit(doc, "");
                return 1;
            }
        }

        if (translates->parsed()) {
            SiegelMatrix z = parse_siegel(z_str);
            ordered_json sec = theta13::suite_translates(z, eps, seed);
            emit(sec, "");
            return sec["status"] == "pass" ? 0 : 1;
        }

        if (product->parsed()) {
            cdouble t1 = parse_complex(tau1_str), t2 = parse_complex(tau2_str);
            theta13::ProductComponentReport rep = theta13::product_components(t1, t2, eps);
            ordered_json doc;
            doc["scale"] = rep.scale;
            doc["component_max"] = {rep.component_max[0], rep.component_max[1],
                                    rep.component_max[2], rep.component_max[3]};
            doc["off_component_min"] = rep.off_component_min;
            doc["factorization_max"] = rep.factorization_max;
            doc["node_gradient_norm"] = rep.node_gradient_norm;
            doc["intersections_two_torsion"] = rep.intersections_two_torsion;
            emit(doc, "");
            return 0;
        }

        if (smooth->parsed()) {
            SiegelMatrix z = parse_siegel(z_str);
            theta13::SmoothnessStats st = theta13::smoothness_report(z, n, seed, eps);
            ordered_json doc;
            doc["points"] = st.count;
            doc["min_gradient"] = st.min_gradient;
            doc["mean_gradient"] = st.mean_gradient;
            doc["max_gradient"] = st.max_gradient;
            doc["scale"] = st.scale;
            emit(doc, "");
            return 0;
        }

        if (trace->parsed()) {
            SiegelMatrix z = parse_siegel(z_str);
            std::string csv = theta13::trace_csv(z, n, seed, eps);
            std::ofstream f(out_path, std::ios::binary);
            if (!f) throw theta13::InvalidInput("cannot open output file: " + out_path);
            f << csv;
            std::cout << "wrote " << out_path << "\n";
            return 0;
        }

        if (suite->parsed()) {
            theta13::SuiteConfig cfg;
            if (ropt->count() > 0) {
                cfg.z = theta13::random_siegel(random_seed);
                cfg.z_random = true;
                cfg.seed = suite->count("--seed") ? seed : random_seed;
            } else if (zopt->count() > 0) {
                cfg.z = parse_siegel(z_str);
                cfg.seed = seed;
            } else {
                throw theta13::InvalidInput("suite: provide either --z or --random");
            }
            cfg.eps = eps;
            cfg.paranoid = paranoid;
            theta13::SuiteReport rep = theta13::run_suite(cfg);
            emit(rep.doc, "");
            if (!out_path.empty()) emit(rep.doc, out_path);
            return rep.exit_code;
        }
    } catch (const theta13::InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const theta13::NotPositiveDefinite& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: invalid numeric literal (" << e.what() << ")\n";
        return 2;
    } catch (const theta13::Theta13Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
