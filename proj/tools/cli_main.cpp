#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include "ctrw/chain.hpp"
#include "ctrw/experiments.hpp"
#include "ctrw/levy.hpp"
#include "ctrw/stable.hpp"
#include "ctrw/stats.hpp"
#include "ctrw/torus.hpp"

namespace {

int cmd_run(const std::string& config_path) {
    const ctrw::ExperimentConfig config =
        ctrw::ExperimentConfig::from_json_file(config_path);
    const auto records = ctrw::run(config);
    std::cout << ctrw::records_to_jsonl(records);
    return 0;
}

int cmd_list() {
    for (const auto& [name, desc] : ctrw::list_experiments())
        std::cout << name << "\n    " << desc << "\n";
    return 0;
}

int cmd_selftest() {
    // quick coherence pass over the main samplers, seconds not minutes
    int failures = 0;
    auto check = [&](const char* what, bool ok) {
        std::cout << (ok ? "ok   " : "FAIL ") << what << "\n";
        if (!ok) ++failures;
    };
    {
        ctrw::Rng rng(7);
        const auto spec = ctrw::StableSpec::one_sided_spec(0.5, 1.0);
        std::vector<double> xs;
        for (int i = 0; i < 2000; ++i) xs.push_back(ctrw::sample_stable(spec, rng));
        const double ks = ctrw::ks_to_reference(
            ctrw::SampleVector(std::move(xs)),
            [&](double x) { return ctrw::stable_cdf(spec, x); });
        check("one-sided stable sampler vs cdf", ks < 0.05);
    }
    {
        const ctrw::FiniteChain fc = ctrw::make_finite_random(5, 11);
        const auto chi = ctrw::solve_poisson(fc);
        double res = 0.0;
        for (std::size_t i = 0; i < fc.size(); ++i) {
            double acc = chi[i] - fc.v[i];
            for (std::size_t j = 0; j < fc.size(); ++j)
                acc -= fc.transition[i][j] * chi[j];
            res = std::max(res, std::fabs(acc));
        }
        check("poisson equation residual", res < 1e-10);
    }
    {
        ctrw::Rng rng(3);
        ctrw::LimitSpec spec;
        spec.regime = ctrw::LimitSpec::Regime::independent;
        const auto path = ctrw::sample_levy_pair(spec, 1.0, rng);
        bool ok = true;
        for (int i = 0; i < 100 && ok; ++i) {
            const double t = 0.9 * path.value_t(1.0) * (i + 0.5) / 100.0;
            const double s = ctrw::right_inverse(path, t);
            ok = path.value_t_left(s) <= t + 1e-12 &&
                 t <= path.value_t(s) + 1e-12;
        }
        check("inverse subordinator sandwich", ok);
    }
    {
        const ctrw::TorusModel m = ctrw::make_torus_model("cos2", "uniformKernel");
        check("torus reversibility residual",
              ctrw::invariant_measure_check(m, 256) < 1e-6);
    }
    std::cout << (failures ? "selftest: FAIL\n" : "selftest: all ok\n");
    return failures ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CTRW scaling-limit experiment harness"};
    app.require_subcommand(1);

    std::string config_path;
    CLI::App* run_cmd = app.add_subcommand("run", "run one experiment config");
    run_cmd->add_option("config", config_path, "JSON config file")->required();
    CLI::App* list_cmd =
        app.add_subcommand("list", "list the experiment catalogue");
    CLI::App* self_cmd =
        app.add_subcommand("selftest", "fast sampler/solver coherence checks");

    CLI11_PARSE(app, argc, argv);
    try {
        if (run_cmd->parsed()) return cmd_run(config_path);
        if (list_cmd->parsed()) return cmd_list();
        if (self_cmd->parsed()) return cmd_selftest();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
