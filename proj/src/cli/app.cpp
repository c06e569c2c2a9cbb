#include "ahibe/cli/app.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "ahibe/bench/cost.hpp"
#include "ahibe/cli/hybrid.hpp"
#include "ahibe/core/serialize.hpp"
#include "ahibe/error.hpp"
#include "ahibe/ggm/checker.hpp"
#include "ahibe/pairing/random.hpp"

namespace ahibe::cli {
namespace {

namespace fs = std::filesystem;
using Bytes = std::vector<std::uint8_t>;

struct CliError : std::runtime_error {
  CliError(int c, const std::string& what) : std::runtime_error(what), code(c) {}
  int code;
};

Bytes read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError(kIo, "cannot read " + path);
  Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw CliError(kIo, "error reading " + path);
  return data;
}

// Written to a sibling temp file and renamed, so a failed run leaves no partial output.
void write_file(const std::string& path, std::span<const std::uint8_t> data) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CliError(kIo, "cannot write " + path);
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    if (!out) throw CliError(kIo, "error writing " + path);
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw CliError(kIo, "cannot write " + path);
  }
}

struct Options {
  unsigned depth = 0;
  std::string id, pp, mk, sk, in, out;
  std::size_t reps = 5;
  bool csv = false, preprocess = false, parallel = false;
  int builtin = 0;
  std::string instance;
  std::optional<std::uint64_t> seed, mock;
  std::optional<std::uint64_t> q;
  std::string p;
  std::vector<std::string> algs;
};

std::unique_ptr<pairing::RandomSource> make_rng(const Options& o) {
  if (o.seed) return std::make_unique<pairing::SeededRandom>(*o.seed);
  return std::make_unique<pairing::SystemRandom>();
}

core::PublicParams load_pp(const Options& o) { return core::deserialize_public_params(read_file(o.pp)); }

core::HierarchicalIdentity identity_for(const Options& o, const core::PublicParams& pp) {
  auto labels = split_path(o.id);
  if (labels.size() > pp.l) {
    throw CliError(kDepth, "identity '" + o.id + "' has depth " + std::to_string(labels.size()) +
                               ", the maximum is " + std::to_string(pp.l));
  }
  return hash_identity(labels, pp.suite.scalars());
}

int cmd_setup(const Options& o, std::ostream& out) {
  if (o.depth < 1) throw CliError(kDepth, "--depth must be at least 1");
  auto suite = o.mock ? pairing::GroupSuite::mock(*o.mock, o.seed.value_or(1)) : pairing::GroupSuite::concrete();
  auto rng = make_rng(o);
  auto sr = core::setup(suite, o.depth, *rng);
  fs::path dir = o.out.empty() ? fs::path(".") : fs::path(o.out);
  std::string pp_path = o.pp.empty() ? (dir / "pp.bin").string() : o.pp;
  std::string mk_path = o.mk.empty() ? (dir / "mk.bin").string() : o.mk;
  write_file(pp_path, core::serialize(sr.pp));
  write_file(mk_path, core::serialize(sr.mk, sr.pp));
  out << "wrote " << pp_path << " and " << mk_path << " (l = " << o.depth << ", " << suite.description() << ")\n";
  return kOk;
}

int cmd_keygen(const Options& o, std::ostream& out) {
  auto pp = load_pp(o);
  auto mk = core::deserialize_master_key(read_file(o.mk), pp);
  auto id = identity_for(o, pp);
  auto rng = make_rng(o);
  write_file(o.out, core::serialize(core::keygen(id, mk, pp, *rng), pp));
  out << "wrote key for '" << o.id << "' to " << o.out << '\n';
  return kOk;
}

int cmd_delegate(const Options& o, std::ostream& out) {
  auto pp = load_pp(o);
  auto sk = core::deserialize_private_key(read_file(o.sk), pp);
  auto target = identity_for(o, pp);
  if (sk.id.depth() >= target.depth() || !sk.id.is_prefix_of(target)) {
    throw CliError(kNotPrefix, "the key's identity is not a proper prefix of '" + o.id + "'");
  }
  auto rng = make_rng(o);
  // One level at a time from the key's depth down to the target.
  for (std::size_t d = sk.id.depth() + 1; d <= target.depth(); ++d) sk = core::delegate(target.prefix(d), sk, pp, *rng);
  write_file(o.out, core::serialize(sk, pp));
  out << "wrote key for '" << o.id << "' to " << o.out << '\n';
  return kOk;
}

int cmd_encrypt(const Options& o, std::ostream& out) {
  auto pp = load_pp(o);
  auto id = identity_for(o, pp);
  auto msg = read_file(o.in);
  auto rng = make_rng(o);
  auto hc = seal(id, msg, pp, *rng);
  write_file(o.out, hc.encode());
  out << "wrote " << o.out << " (header " << hc.header.size() << " bytes, body " << hc.body.size() << " bytes)\n";
  return kOk;
}

int cmd_decrypt(const Options& o, std::ostream& out) {
  auto pp = load_pp(o);
  auto sk = core::deserialize_private_key(read_file(o.sk), pp);
  auto hc = HybridCiphertext::parse(read_file(o.in));
  auto msg = open(hc, sk, pp);
  if (o.out.empty() || o.out == "-") {
    out.write(reinterpret_cast<const char*>(msg.data()), static_cast<std::streamsize>(msg.size()));
  } else {
    write_file(o.out, msg);
  }
  return kOk;
}

int cmd_bench(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.mock) throw CliError(kUsage, "bench needs the concrete backend; mock timings are meaningless");
  unsigned l = o.depth == 0 ? 30 : o.depth;
  std::vector<std::string> algs = o.algs;
  if (algs.empty()) algs = {"keygen", "delegate", "encrypt", "decrypt"};
  auto suite = pairing::GroupSuite::concrete();
  bench::BenchOptions bo;
  bo.reps = o.reps;
  bo.preprocess = o.preprocess;
  bo.parallel = o.parallel;
  bo.seed = o.seed.value_or(1);

  std::ostringstream body;
  bool first = true;
  for (const auto& name : algs) {
    auto alg = bench::parse_algorithm(name);
    std::vector<unsigned> grid;
    unsigned top = alg == bench::Algorithm::delegate ? l - 1 : l;
    if (alg == bench::Algorithm::setup) top = 0;
    for (unsigned d = 0; d <= top; ++d) grid.push_back(d);
    auto rep = bench::run_bench(alg, suite, l, grid, bo);
    if (o.csv) {
      rep.write_csv(body, first);
    } else {
      rep.write_ndjson(body);
      rep.write_summary(err);
      err << '\n';
    }
    first = false;
  }
  if (!o.csv) {
    if (o.preprocess) {
      err << "keygen preprocessing speedup at l = " << l << ", d = 1: "
          << bench::preprocessing_speedup(suite, l, 1, o.reps, bo.seed) << "x\n";
    }
    bench::PublishedTimings::write(err);
  }
  if (o.out.empty()) {
    out << body.str();
  } else {
    auto s = body.str();
    write_file(o.out, std::span(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
  }
  return kOk;
}

int cmd_ggm(const Options& o, std::ostream& out) {
  if ((o.builtin != 0) == !o.instance.empty()) throw CliError(kUsage, "give exactly one of --builtin or --instance");
  ggm::AssumptionInstance inst;
  if (o.builtin != 0) {
    inst = ggm::builtin_assumption(o.builtin);
  } else {
    auto bytes = read_file(o.instance);
    inst = ggm::parse_instance(std::string(bytes.begin(), bytes.end()));
  }
  auto v = ggm::check_assumption(inst);
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  out << "instance: " << (inst.name.empty() ? "(unnamed)" : inst.name) << ", challenge in "
      << ggm::to_string(inst.challenge) << '\n';
  for (int b = 0; b < 2; ++b) {
    out << "T" << b << " dependent on P: " << yn(v.t_dependent_on_P[b]);
    if (inst.challenge != ggm::ChallengeGroup::gt) out << ", dependent via pairing: " << yn(v.pairing_dependent[b]);
    out << '\n';
    if (!v.challenge_products[b].empty()) {
      out << "  {e(T" << b << ", Q_j)} = {";
      for (std::size_t i = 0; i < v.challenge_products[b].size(); ++i) {
        out << (i ? ", " : "") << v.challenge_products[b][i].to_string();
      }
      out << "}\n";
    }
  }
  out << "generic-secure: " << yn(v.generic_secure) << ", bound " << v.bound.symbolic() << " (l = " << v.bound.l
      << ", t = " << v.bound.t << ")\n";
  if (o.q || !o.p.empty()) {
    if (!o.q || o.p.empty()) throw CliError(kUsage, "--q and --p go together");
    mpz_class p;
    if (p.set_str(o.p, 10) != 0 || p <= 0) throw CliError(kUsage, "--p must be a positive decimal integer");
    mpq_class e = v.bound.evaluate(*o.q, p);
    out << "bound at q = " << *o.q << ": " << e.get_str() << " ~ " << e.get_d() << '\n';
  }
  return kOk;
}

int to_exit(ErrorKind k) {
  switch (k) {
    case ErrorKind::invalid_argument: return kUsage;
    case ErrorKind::malformed: return kStructural;
    case ErrorKind::io: return kIo;
    case ErrorKind::authentication: return kAuthentication;
  }
  return kStructural;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Anonymous hierarchical identity-based encryption tool"};
  app.require_subcommand(1);
  Options o;

  auto add_seed = [&](CLI::App* c) { c->add_option("--seed", o.seed, "Deterministic randomness (testing)"); };

  auto* setup = app.add_subcommand("setup", "Generate public parameters and master key");
  setup->add_option("--depth", o.depth, "Maximum hierarchy depth l")->required();
  setup->add_option("--out", o.out, "Output directory for pp.bin and mk.bin");
  setup->add_option("--pp", o.pp, "Public parameter file (overrides --out)");
  setup->add_option("--mk", o.mk, "Master key file (overrides --out)");
  setup->add_option("--mock", o.mock, "Use the mock backend over Z_P (testing)");
  add_seed(setup);

  auto* keygen = app.add_subcommand("keygen", "Derive a private key from the master key");
  keygen->add_option("--pp", o.pp)->required();
  keygen->add_option("--mk", o.mk)->required();
  keygen->add_option("--id", o.id, "Identity path, e.g. corp/eng/alice")->required();
  keygen->add_option("--out", o.out)->required();
  add_seed(keygen);

  auto* delegate = app.add_subcommand("delegate", "Derive a descendant's key from a private key");
  delegate->add_option("--pp", o.pp)->required();
  delegate->add_option("--sk", o.sk)->required();
  delegate->add_option("--id", o.id, "Target identity path")->required();
  delegate->add_option("--out", o.out)->required();
  add_seed(delegate);

  auto* encrypt = app.add_subcommand("encrypt", "Encrypt a file to an identity");
  encrypt->add_option("--pp", o.pp)->required();
  encrypt->add_option("--id", o.id)->required();
  encrypt->add_option("--in", o.in)->required();
  encrypt->add_option("--out", o.out)->required();
  add_seed(encrypt);

  auto* decrypt = app.add_subcommand("decrypt", "Decrypt a file with a private key");
  decrypt->add_option("--pp", o.pp)->required();
  decrypt->add_option("--sk", o.sk)->required();
  decrypt->add_option("--in", o.in)->required();
  decrypt->add_option("--out", o.out, "Plaintext file (default stdout)");

  auto* bench = app.add_subcommand("bench", "Time the algorithms over all depths");
  bench->add_option("alg", o.algs, "setup, keygen, delegate, encrypt, decrypt (default: all but setup)");
  bench->add_option("--depth", o.depth, "Maximum depth l (default 30)");
  bench->add_option("--reps", o.reps, "Repetitions per cell")->check(CLI::PositiveNumber);
  bench->add_flag("--csv", o.csv, "CSV instead of NDJSON and summary");
  bench->add_flag("--preprocess", o.preprocess, "Fixed-base tables for keygen");
  bench->add_flag("--parallel", o.parallel, "Measure cells on separate threads");
  bench->add_option("--out", o.out, "Write records to a file");
  bench->add_option("--mock", o.mock, "Rejected: timings need the concrete backend");
  add_seed(bench);

  auto* ggm = app.add_subcommand("ggm-check", "Check an assumption in the generic group model");
  ggm->add_option("--builtin", o.builtin, "Builtin assumption 1-5")->check(CLI::Range(1, 5));
  ggm->add_option("--instance", o.instance, "Instance file");
  ggm->add_option("--q", o.q, "Adversary query count for the numeric bound");
  ggm->add_option("--p", o.p, "Group order for the numeric bound (decimal)");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();  // program name
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*setup) return cmd_setup(o, out);
    if (*keygen) return cmd_keygen(o, out);
    if (*delegate) return cmd_delegate(o, out);
    if (*encrypt) return cmd_encrypt(o, out);
    if (*decrypt) return cmd_decrypt(o, out);
    if (*bench) return cmd_bench(o, out, err);
    if (*ggm) return cmd_ggm(o, out);
  } catch (const CliError& e) {
    err << "error: " << e.what() << '\n';
    return e.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return to_exit(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kStructural;
  }
  return kUsage;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  return run(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace ahibe::cli
