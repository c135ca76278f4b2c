#include "grassop/serialize.hpp"

#include "grassop/errors.hpp"

namespace grassop {

Json operator_to_json(const SpectralOperator& a) {
  const auto& sig = a.signature();
  Json frames = Json::array();
  for (const auto& x : a.eigenspaces()) {
    Json entries = Json::array();
    const Matrix& f = x.frame();
    for (Index c = 0; c < f.cols(); ++c) {
      for (Index r = 0; r < f.rows(); ++r) {
        entries.push_back({f(r, c).real(), f(r, c).imag()});
      }
    }
    frames.push_back(std::move(entries));
  }
  return Json{{"sigma", sig.eigenvalues()},
              {"d", sig.multiplicities()},
              {"N", sig.ambient_dim()},
              {"frames", std::move(frames)}};
}

std::string serialize_operator(const SpectralOperator& a) { return operator_to_json(a).dump(2) + "\n"; }

SpectralOperator operator_from_json(const Json& doc, Tolerance tol) {
  try {
    if (!doc.is_object()) {
      fail(ErrorKind::ValidationError, "document must be an object");
    }
    for (const char* key : {"sigma", "d", "N", "frames"}) {
      if (!doc.contains(key)) {
        fail(ErrorKind::ValidationError, std::string("missing field '") + key + "'");
      }
    }
    const auto sigma = doc.at("sigma").get<std::vector<double>>();
    const auto d = doc.at("d").get<std::vector<int>>();
    const auto n = doc.at("N").get<long long>();
    ClassSignature sig = ClassSignature::make(sigma, d);
    if (sig.ambient_dim() != n) {
      fail(ErrorKind::ValidationError, "sum of multiplicities differs from N");
    }
    const Json& frames = doc.at("frames");
    if (!frames.is_array() || frames.size() != d.size()) {
      fail(ErrorKind::ValidationError, "need one frame per eigenvalue");
    }
    std::vector<Subspace> spaces;
    for (std::size_t t = 0; t < d.size(); ++t) {
      const Json& entries = frames[t];
      const auto expected = static_cast<std::size_t>(n) * static_cast<std::size_t>(d[t]);
      if (!entries.is_array() || entries.size() != expected) {
        fail(ErrorKind::ValidationError, "frame " + std::to_string(t) + " has the wrong number of entries");
      }
      Matrix f(n, d[t]);
      std::size_t e = 0;
      for (Index c = 0; c < f.cols(); ++c) {
        for (Index r = 0; r < f.rows(); ++r, ++e) {
          const auto pair = entries[e].get<std::vector<double>>();
          if (pair.size() != 2) {
            fail(ErrorKind::ValidationError, "complex entries are [re, im] pairs");
          }
          f(r, c) = {pair[0], pair[1]};
        }
      }
      spaces.push_back(Subspace::from_frame(std::move(f), tol));
    }
    return make_operator(std::move(sig), std::move(spaces));
  } catch (const Json::exception& e) {
    fail(ErrorKind::ValidationError, e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ValidationError) {
      throw;
    }
    fail(ErrorKind::ValidationError, e.what());
  }
}

SpectralOperator deserialize_operator(const std::string& text, Tolerance tol) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::ParseError, e.what());
  }
  return operator_from_json(doc, tol);
}

namespace {

Json pair_json(IndexPair p) { return Json::array({p.first + 1, p.second + 1}); }

}  // namespace

Json path_to_json(const OperatorPath& path) {
  Json vertices = Json::array();
  for (const auto& v : path.vertices) {
    vertices.push_back(operator_to_json(v));
  }
  Json types = Json::array();
  for (const auto& t : path.edge_types) {
    types.push_back(pair_json(t));
  }
  return Json{{"length", path.length()}, {"edge_types", std::move(types)}, {"vertices", std::move(vertices)}};
}

Json verdict_to_json(const AdjacencyVerdict& verdict) {
  Json out{{"a1", verdict.a1}, {"a2", verdict.a2}, {"rank", verdict.diff_rank}, {"adjacent", verdict.adjacent()}};
  out["type"] = verdict.type_pair ? pair_json(*verdict.type_pair) : Json(nullptr);
  return out;
}

}  // namespace grassop
