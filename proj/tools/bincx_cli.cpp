// bincx command line: batch verification, invariants, shortening and the
// Nenashev-relation checker for binary acyclic complex files.
//
// Exit codes: 0 success, 1 mathematical failure (invalid complex, false
// identity), 2 I/O or parse failure.

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "bincx/bincx.hpp"

namespace fs = std::filesystem;
using namespace bincx;

namespace {

std::size_t thread_budget() {
    if (const char* env = std::getenv("BINCX_THREADS")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0' && v >= 1) return static_cast<std::size_t>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// kappa rendered for people: "3/2" over the rationals, "5 (mod 7)" over F_p.
template <class F>
std::string show_scalar(const F& v, const FieldSpec& spec) {
    if (spec.kind == FieldSpec::Kind::PrimeField)
        return v.to_string() + " (mod " + std::to_string(spec.p) + ")";
    return v.to_string();
}

struct VerifyOutcome {
    int code; // 0 / 1 / 2
    std::string message;
};

VerifyOutcome verify_one(const std::string& path) {
    try {
        json j = load_json(path);
        FieldSpec spec = file_field(j);
        return with_field(spec, [&](auto desc) -> VerifyOutcome {
            using F = scalar_for_t<decltype(desc)>;
            auto b = complex_from_json<F>(desc, j);
            auto r = validate(b);
            if (auto* bad = std::get_if<InvalidBinary>(&r))
                return {1, std::string("invalid: ") + side_name(bad->side) + ", degree " +
                               std::to_string(bad->degree)};
            return {0, "ok"};
        });
    } catch (const ParseError& e) {
        return {2, std::string("parse error: ") + e.what()};
    }
}

int cmd_verify(const std::vector<std::string>& paths) {
    std::vector<VerifyOutcome> results(paths.size(), VerifyOutcome{2, ""});
    const std::size_t workers = std::min(thread_budget(), paths.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next.fetch_add(1); i < paths.size(); i = next.fetch_add(1))
            results[i] = verify_one(paths[i]);
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    int rc = 0;
    for (std::size_t i = 0; i < paths.size(); ++i) {
        std::cout << paths[i] << ": " << results[i].message << "\n";
        if (results[i].code == 2)
            rc = 2;
        else if (results[i].code == 1 && rc != 2)
            rc = 1;
    }
    return rc;
}

int cmd_invariant(const std::string& path) {
    json j = load_json(path);
    FieldSpec spec = file_field(j);
    return with_field(spec, [&](auto desc) -> int {
        using F = scalar_for_t<decltype(desc)>;
        auto b = complex_from_json<F>(desc, j);
        auto r = validate(b);
        if (auto* bad = std::get_if<InvalidBinary>(&r)) {
            std::cerr << "invalid: " << side_name(bad->side) << ", degree " << bad->degree << "\n";
            return 1;
        }
        std::cout << show_scalar(kappa(b), spec) << "\n";
        return 0;
    });
}

int cmd_shorten(const std::string& path, const std::string& target, std::uint64_t seed,
                const std::string& witnesses, const std::string& out_dir) {
    json j = load_json(path);
    FieldSpec spec = file_field(j);
    fs::create_directories(out_dir);
    return with_field(spec, [&](auto desc) -> int {
        using F = scalar_for_t<decltype(desc)>;
        auto b = complex_from_json<F>(desc, j);
        auto vr = validate(b);
        if (auto* bad = std::get_if<InvalidBinary>(&vr)) {
            std::cerr << "invalid: " << side_name(bad->side) << ", degree " << bad->degree << "\n";
            return 1;
        }
        NenashevExpression<F> e;
        if (target == "len4") {
            auto ch = witnesses == "random" ? randomized_choices(b, seed, 3)
                                            : canonical_choices(b);
            e = shorten_to_len4(b, ch);
        } else {
            auto policy = witnesses == "random" ? ChoicePolicy::random(seed)
                                                : ChoicePolicy::canonical();
            e = nenashev_form(b, policy);
        }
        F kin = kappa(b);
        F kex = kappa_expression(e, desc);
        json manifest;
        manifest["input"] = path;
        manifest["target"] = target;
        manifest["witnesses"] = witnesses;
        manifest["seed"] = seed;
        manifest["kappa_input"] = kin.to_string();
        manifest["kappa_expression"] = kex.to_string();
        manifest["ok"] = (kin == kex);
        json terms = json::array();
        for (std::size_t i = 0; i < e.terms.size(); ++i) {
            char name[32];
            std::snprintf(name, sizeof name, "term_%03zu.json", i);
            save_json_atomic((fs::path(out_dir) / name).string(),
                             complex_to_json(e.terms[i].complex));
            terms.push_back(json{{"sign", e.terms[i].sign},
                                 {"file", name},
                                 {"kappa", kappa(e.terms[i].complex).to_string()}});
        }
        manifest["terms"] = std::move(terms);
        save_json_atomic((fs::path(out_dir) / "manifest.json").string(), manifest);
        std::cout << e.terms.size() << " terms, kappa(input) = " << show_scalar(kin, spec)
                  << ", kappa(expression) = " << show_scalar(kex, spec)
                  << (kin == kex ? " [ok]" : " [MISMATCH]") << "\n";
        return kin == kex ? 0 : 1;
    });
}

int cmd_check_nenashev(const std::string& path) {
    json j = load_json(path);
    FieldSpec spec = file_field(j);
    return with_field(spec, [&](auto desc) -> int {
        using F = scalar_for_t<decltype(desc)>;
        auto d = double_from_json<F>(desc, j);
        if (auto defect = double_complex_defect(d)) {
            std::cerr << "invalid double complex: " << *defect << "\n";
            return 1;
        }
        if (!check_nenashev_relation(d)) {
            std::cout << "relation FAILS\n";
            return 1;
        }
        std::cout << "relation holds\n";
        return 0;
    });
}

int cmd_random(const std::string& field, const std::string& jdims_text, std::uint64_t seed,
               const std::string& out) {
    auto spec = FieldSpec::parse(field);
    if (!spec) {
        std::cerr << "parse error: bad field \"" << field << "\"\n";
        return 2;
    }
    std::vector<std::size_t> jdims;
    std::size_t pos = 0;
    while (pos <= jdims_text.size()) {
        std::size_t comma = jdims_text.find(',', pos);
        std::string tok = jdims_text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                            : comma - pos);
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
            std::cerr << "parse error: bad J-dims \"" << jdims_text << "\"\n";
            return 2;
        }
        jdims.push_back(static_cast<std::size_t>(std::stoull(tok)));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return with_field(*spec, [&](auto desc) -> int {
        using F = scalar_for_t<decltype(desc)>;
        Rng rng(seed);
        BinaryComplex<F> b(random_acyclic<F>(desc, jdims, rng.next()),
                           random_acyclic<F>(desc, jdims, rng.next()));
        save_json_atomic(out, complex_to_json(b));
        std::cout << "wrote " << out << "\n";
        return 0;
    });
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"binary acyclic complexes: verification, invariants, shortening"};
    app.require_subcommand(1);

    std::vector<std::string> verify_paths;
    auto* verify = app.add_subcommand("verify", "validate binary complex files");
    verify->add_option("files", verify_paths, "complex files")->required();

    std::string inv_path;
    auto* invariant = app.add_subcommand("invariant", "print the torsion invariant kappa");
    invariant->add_option("file", inv_path, "complex file")->required();

    std::string sh_path, sh_target = "len2", sh_witnesses = "canonical", sh_out = ".";
    std::uint64_t sh_seed = 0;
    auto* shorten = app.add_subcommand("shorten", "shorten to length-4 or length-2 generators");
    shorten->add_option("file", sh_path, "complex file")->required();
    shorten->add_option("--target", sh_target, "len4 or len2")
        ->check(CLI::IsMember({"len4", "len2"}));
    shorten->add_option("--seed", sh_seed, "seed for random witnesses");
    shorten->add_option("--witnesses", sh_witnesses, "canonical or random")
        ->check(CLI::IsMember({"canonical", "random"}));
    shorten->add_option("--out", sh_out, "output directory")->required();

    std::string nen_path;
    auto* nen =
        app.add_subcommand("check-nenashev", "check the Nenashev relation of a double complex");
    nen->add_option("file", nen_path, "double complex file")->required();

    std::string rnd_field = "Q", rnd_jdims, rnd_out;
    std::uint64_t rnd_seed = 0;
    auto* rnd = app.add_subcommand("random", "emit a seeded random binary acyclic complex");
    rnd->add_option("--field", rnd_field, "Q or Fp:<p>");
    rnd->add_option("--jdims", rnd_jdims, "comma separated factorization dims, e.g. 1,2,1")
        ->required();
    rnd->add_option("--seed", rnd_seed, "generator seed");
    rnd->add_option("--out", rnd_out, "output file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed()) return cmd_verify(verify_paths);
        if (invariant->parsed()) return cmd_invariant(inv_path);
        if (shorten->parsed())
            return cmd_shorten(sh_path, sh_target, sh_seed, sh_witnesses, sh_out);
        if (nen->parsed()) return cmd_check_nenashev(nen_path);
        if (rnd->parsed()) return cmd_random(rnd_field, rnd_jdims, rnd_seed, rnd_out);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
