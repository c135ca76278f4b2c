#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "grassop/cliques.hpp"
#include "grassop/errors.hpp"
#include "grassop/suite.hpp"

using namespace grassop;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    fail(ErrorKind::InvalidInput, "cannot open '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) {
    fail(ErrorKind::InvalidInput, "cannot write '" + path + "'");
  }
  out << text;
}

SpectralOperator load(const std::string& path) { return deserialize_operator(read_file(path)); }

Json clique_json(const CliqueDescriptor& d) {
  return Json{{"minus", d.minus + 1}, {"plus", d.plus + 1}, {"base", operator_to_json(d.base)}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adjacency queries for Hermitian operators with a fixed spectrum"};
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  std::string out;

  auto* sample = app.add_subcommand("sample", "emit a random operator of a class");
  std::vector<double> sigma;
  std::vector<int> mult;
  sample->add_option("--sigma", sigma, "distinct eigenvalues")->required()->delimiter(',');
  sample->add_option("--d", mult, "multiplicities")->required()->delimiter(',');
  sample->add_option("--seed", seed, "random seed")->envname("GRASSOP_SEED");
  sample->add_option("-o,--out", out, "output file (default stdout)");

  auto* adjacent = app.add_subcommand("adjacent", "adjacency verdict for two operator files");
  std::string file_a;
  std::string file_b;
  adjacent->add_option("A", file_a)->required()->check(CLI::ExistingFile);
  adjacent->add_option("B", file_b)->required()->check(CLI::ExistingFile);

  auto* path = app.add_subcommand("path", "path between two operator files");
  path->add_option("A", file_a)->required()->check(CLI::ExistingFile);
  path->add_option("B", file_b)->required()->check(CLI::ExistingFile);
  path->add_option("-o,--out", out, "output file (default stdout)");

  auto* clique = app.add_subcommand("clique", "classify pairwise adjacent operator files");
  std::vector<std::string> files;
  clique->add_option("files", files)->required()->check(CLI::ExistingFile);

  auto* counter = app.add_subcommand("counterexample", "emit a pair with rank-2 difference that is not adjacent");
  bool c3 = false;
  bool general = false;
  int dim = 5;
  std::string out_dir = ".";
  auto* c3_flag = counter->add_flag("--c3", c3, "the fixed 3x3 pair");
  auto* general_flag = counter->add_flag("--general", general, "a random C + aP_X instance");
  c3_flag->excludes(general_flag);
  counter->add_option("--dim", dim, "ambient dimension for --general")->check(CLI::Range(4, 64));
  counter->add_option("--seed", seed, "random seed")->envname("GRASSOP_SEED");
  counter->add_option("--out-dir", out_dir, "directory receiving A.json and B.json");

  auto* verify = app.add_subcommand("verify", "run the property suite");
  SuiteConfig cfg;
  bool json = false;
  bool timing = false;
  verify->add_option("--seed", cfg.seed, "random seed")->envname("GRASSOP_SEED");
  verify->add_option("--trials", cfg.trials, "trials per test")->check(CLI::PositiveNumber);
  verify->add_option("--max-ambient", cfg.max_ambient, "largest ambient dimension")->check(CLI::Range(4, 64));
  verify->add_option("--only", cfg.only, "run only the named tests");
  verify->add_flag("--json", json, "print the JSON report");
  verify->add_flag("--timing", timing, "include wall time in the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*sample) {
      Rng rng(seed);
      write_text(out, serialize_operator(random_operator(ClassSignature::make(sigma, mult), rng)));
    } else if (*adjacent) {
      std::cout << verdict_to_json(is_adjacent(load(file_a), load(file_b))).dump(2) << "\n";
    } else if (*path) {
      write_text(out, path_to_json(connect(load(file_a), load(file_b))).dump(2) + "\n");
    } else if (*clique) {
      std::vector<SpectralOperator> ops;
      for (const auto& f : files) {
        ops.push_back(load(f));
      }
      const auto cls = classify_clique(ops);
      const Json doc{{"pair", {cls.pair.first + 1, cls.pair.second + 1}},
                     {"orientation", cls.orientation == CliqueOrientation::Star ? "star" : "top"},
                     {"clique", clique_json(cls.descriptor)}};
      std::cout << doc.dump(2) << "\n";
    } else if (*counter) {
      if (!c3 && !general) {
        std::cerr << "counterexample: choose --c3 or --general\n";
        return 2;
      }
      std::pair<SpectralOperator, SpectralOperator> pair = pseudo_adjacent_c3();
      if (general) {
        Rng rng(seed);
        for (int attempt = 0;; ++attempt) {
          try {
            const Index rank = rng.uniform_int(1, dim - 2);
            const Matrix f = rng.unitary(dim).leftCols(rank);
            Eigen::VectorXd values(rank);
            for (Index t = 0; t < rank; ++t) {
              values(t) = static_cast<double>(t + 1) + rng.uniform(0.1, 0.4);
            }
            const Matrix c = f * values.cast<std::complex<double>>().asDiagonal() * f.adjoint();
            auto inst = pseudo_adjacent_general(c, orthonormalize(rng.gaussian(dim, 1)), -1.5, rng);
            pair = {inst.a, inst.b};
            break;
          } catch (const Error& e) {
            if (e.kind() != ErrorKind::DegenerateInput || attempt >= 16) {
              throw;
            }
          }
        }
      }
      std::filesystem::create_directories(out_dir);
      const auto dir = std::filesystem::path(out_dir);
      write_text((dir / "A.json").string(), serialize_operator(pair.first));
      write_text((dir / "B.json").string(), serialize_operator(pair.second));
      std::cout << (dir / "A.json").string() << "\n" << (dir / "B.json").string() << "\n";
    } else if (*verify) {
      const auto report = run_suite(cfg);
      if (json) {
        std::cout << report.to_json(timing).dump(2) << "\n";
      } else {
        for (const auto& t : report.tests) {
          std::cout << (t.failures == 0 ? "PASS " : "FAIL ") << t.name << "  trials=" << t.trials
                    << " failures=" << t.failures;
          if (timing) {
            std::cout << " seconds=" << t.seconds;
          }
          std::cout << "\n";
          for (const auto& f : t.examples) {
            std::cout << "  trial " << f.trial << ": " << f.message << "\n";
          }
        }
      }
      return report.passed() ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
