#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <string>

#include "CLI11.hpp"

#include "anamac/channel.hpp"
#include "anamac/experiments.hpp"
#include "anamac/mac.hpp"
#include "anamac/verifier.hpp"

namespace {

using namespace anamac;

void write_text(const std::string& out, const std::string& text) {
    if (out.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        std::fflush(stdout);
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw IoError("cannot open output file: " + out);
    f.write(text.data(), std::streamsize(text.size()));
    f.flush();
    if (!f) throw IoError("write failed: " + out);
}

void write_bytes(const std::string& out, const Bytes& bytes) {
    std::ofstream f(out, std::ios::binary);
    if (!f) throw IoError("cannot open output file: " + out);
    f.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
    f.flush();
    if (!f) throw IoError("write failed: " + out);
}

Bytes read_bytes(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open file: " + path);
    return Bytes(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
}

ExperimentConfig merged_config(const std::string& config_path, const ExperimentConfig& cli,
                               const std::string& ebn0_text, const std::string& rho_grid_text,
                               const std::string& out_flag) {
    ExperimentConfig cfg;
    if (!config_path.empty()) cfg = parse_config_file(config_path);
    if (cli.n) cfg.n = cli.n;
    if (cli.l) cfg.l = cli.l;
    if (cli.r) cfg.r = cli.r;
    if (cli.q) cfg.q = cli.q;
    if (cli.sigma_w) cfg.sigma_w = cli.sigma_w;
    if (cli.clip_a) cfg.clip_a = cli.clip_a;
    if (cli.rho) cfg.rho = cli.rho;
    if (cli.prf) cfg.prf = cli.prf;
    if (cli.trials) cfg.trials = cli.trials;
    if (cli.seed) cfg.seed = cli.seed;
    if (!ebn0_text.empty()) cfg.ebn0_grid = parse_grid(ebn0_text);
    if (!rho_grid_text.empty()) cfg.rho_grid = parse_grid(rho_grid_text);
    if (!out_flag.empty()) cfg.out = out_flag;
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Noise-masked tag generation, verification, and analysis"};
    app.require_subcommand(1);

    // keygen
    auto* keygen = app.add_subcommand("keygen", "Derive a key from a seed and print it as hex");
    unsigned kg_n = 128;
    uint64_t kg_seed = 1;
    keygen->add_option("--n", kg_n, "key bits");
    keygen->add_option("--seed", kg_seed, "derivation seed");

    // tag
    auto* tag = app.add_subcommand("tag", "Produce a noisy quantized tag frame for a message");
    std::string tg_key, tg_msg = "probe", tg_out;
    unsigned tg_n = 128, tg_l = 256, tg_q = 8;
    double tg_sigma = 0.5, tg_clip = 0.0;
    uint64_t tg_seed = 1;
    std::string tg_prf = "reference";
    tag->add_option("--key", tg_key, "key as hex")->required();
    tag->add_option("--msg", tg_msg, "message text");
    tag->add_option("--n", tg_n, "key bits");
    tag->add_option("--l", tg_l, "tag bits");
    tag->add_option("--q", tg_q, "quantizer bits");
    tag->add_option("--sigma-w", tg_sigma, "noise standard deviation");
    tag->add_option("--clip-a", tg_clip, "quantizer range bound, 0 = default");
    tag->add_option("--seed", tg_seed, "noise seed");
    tag->add_option("--prf", tg_prf, "tag generator: reference or toy");
    tag->add_option("--out", tg_out, "frame output file; omitted = hex on stdout");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "Check a tag frame against a key and message");
    std::string vf_key, vf_msg = "probe", vf_frame;
    unsigned vf_n = 128;
    double vf_rho = 0.5;
    std::string vf_prf = "reference";
    verify_cmd->add_option("--key", vf_key, "key as hex")->required();
    verify_cmd->add_option("--msg", vf_msg, "message text");
    verify_cmd->add_option("--frame", vf_frame, "frame file to check")->required();
    verify_cmd->add_option("--n", vf_n, "key bits");
    verify_cmd->add_option("--rho", vf_rho, "normalized decision threshold");
    verify_cmd->add_option("--prf", vf_prf, "tag generator: reference or toy");

    // experiments
    ExperimentConfig cli;
    std::string config_path, ebn0_text, rho_grid_text, out_flag;
    auto add_experiment_options = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "key = value settings file");
        cmd->add_option("--seed", cli.seed, "run seed");
        cmd->add_option("--out", out_flag, "output file; omitted = stdout");
        cmd->add_option("--trials", cli.trials, "Monte Carlo trials / sample size");
        cmd->add_option("--n", cli.n, "key bits");
        cmd->add_option("--l", cli.l, "tag bits");
        cmd->add_option("--r", cli.r, "tags per key");
        cmd->add_option("--q", cli.q, "quantizer bits, 0 = unquantized");
        cmd->add_option("--sigma-w", cli.sigma_w, "noise standard deviation");
        cmd->add_option("--clip-a", cli.clip_a, "quantizer range bound");
        cmd->add_option("--rho", cli.rho, "normalized decision threshold");
        cmd->add_option("--prf", cli.prf, "tag generator: reference or toy");
        cmd->add_option("--ebn0-grid", ebn0_text, "dB grid: start:stop:step or comma list");
        cmd->add_option("--rho-grid", rho_grid_text, "threshold grid: start:stop:step or comma list");
    };

    auto* distance = app.add_subcommand("distance", "Empirical vs theoretical tag distance spectrum");
    auto* bounds = app.add_subcommand("bounds", "Capacity, equivocation, and error-bound table");
    auto* roc = app.add_subcommand("roc", "Monte Carlo alpha/beta against closed forms");
    auto* attack = app.add_subcommand("attack", "Exhaustive-adversary experiment report");
    for (auto* cmd : {distance, bounds, roc, attack}) add_experiment_options(cmd);

    auto run_experiment = [&](Artifact (*runner)(const ExperimentConfig&)) {
        ExperimentConfig cfg = merged_config(config_path, cli, ebn0_text, rho_grid_text, out_flag);
        Artifact art = runner(cfg);
        write_text(cfg.out, art.text);
        if (!art.ok) throw NumericError(art.error);
    };
    distance->callback([&] { run_experiment(run_distance); });
    bounds->callback([&] { run_experiment(run_bounds); });
    roc->callback([&] { run_experiment(run_roc); });
    attack->callback([&] { run_experiment(run_attack); });

    keygen->callback([&] {
        MacParams mp;
        mp.n = kg_n;
        mp.validate();
        std::cout << gen_key(mp, kg_seed).to_hex() << "\n";
    });

    tag->callback([&] {
        MacParams mp;
        mp.n = tg_n;
        mp.l = tg_l;
        mp.prf = prf_from_string(tg_prf);
        mp.validate();
        ChannelParams ch;
        ch.sigma_w = tg_sigma;
        if (tg_q == 0)
            ch.q.reset();
        else
            ch.q = tg_q;
        ch.clip_A = tg_clip;
        ch.validate();
        SecretKey key = SecretKey::from_hex(tg_key, mp.n);
        SourceMessage msg(tg_msg.begin(), tg_msg.end());
        NoisyTag noisy = make_ana_tag(key, msg, mp, ch, tg_seed);
        Bytes frame = encode_packet(noisy, ch);
        if (tg_out.empty())
            std::cout << to_hex(frame) << "\n";
        else
            write_bytes(tg_out, frame);
    });

    verify_cmd->callback([&] {
        Bytes frame = read_bytes(vf_frame);
        auto [noisy, ch] = decode_packet(frame);
        VerifyConfig cfg;
        cfg.rho = vf_rho;
        cfg.mac.n = vf_n;
        cfg.mac.l = unsigned(noisy.size());
        cfg.mac.prf = prf_from_string(vf_prf);
        cfg.mac.validate();
        cfg.channel = ch;
        SecretKey key = SecretKey::from_hex(vf_key, vf_n);
        SourceMessage msg(vf_msg.begin(), vf_msg.end());
        Decision d = verify(key, msg, noisy, cfg);
        std::cout << (d.accept ? "accept" : "reject") << " eta=" << format_number(d.eta)
                  << " threshold=" << format_number(d.threshold) << "\n";
    });

    try {
        app.parse(argc, argv);
        return 0;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
