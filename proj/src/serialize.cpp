#include "boat/serialize.hpp"

#include <cmath>
#include <string>

#include "boat/errors.hpp"

namespace boat {

namespace {

Json complex_pair(Complex z) { return Json::array({z.real(), z.imag()}); }

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw SchemaError(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

template <class T> T get_as(const Json& j, const char* key) {
  try {
    return require(j, key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("field \"") + key + "\": " + e.what());
  }
}

std::array<double, 3> triple(const Json& j, const char* key) {
  const auto v = get_as<std::vector<double>>(j, key);
  if (v.size() != 3) throw SchemaError(std::string("field \"") + key + "\" needs 3 entries");
  return {v[0], v[1], v[2]};
}

std::array<int, 2> levels(const Json& op) {
  const auto v = get_as<std::vector<int>>(op, "levels");
  if (v.size() != 2) throw SchemaError("gate \"levels\" needs 2 entries");
  return {v[0], v[1]};
}

} // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(e.what(), line, column);
  }
}

Json to_json(const SymmetricState& s) {
  const DickeBasis basis(s.dims());
  Json labels = Json::array();
  Json amps = Json::array();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    labels.push_back(basis.label(i));
    amps.push_back(complex_pair(s.amplitude(i)));
  }
  return {{"n", s.dims().n()}, {"d", s.dims().d()}, {"labels", labels}, {"amplitudes", amps}};
}

SymmetricState state_from_json(const Json& j) {
  const SystemDims dims(get_as<int>(j, "n"), get_as<int>(j, "d"));
  const auto amps = get_as<std::vector<std::array<double, 2>>>(j, "amplitudes");
  if (amps.size() != dims.basis_size()) {
    throw DomainError("expected " + std::to_string(dims.basis_size()) + " amplitudes, got " +
                      std::to_string(amps.size()));
  }
  Eigen::VectorXcd v(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t i = 0; i < amps.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = Complex(amps[i][0], amps[i][1]);
  }
  return SymmetricState(dims, std::move(v));
}

Json to_json(const GHZReport& r) {
  Json comps = Json::array();
  for (std::size_t k = 0; k < r.nonzero_count; ++k) {
    comps.push_back({{"q", r.nonzero_q[k]},
                     {"magnitude", r.magnitudes[k]},
                     {"coefficient", complex_pair(r.coefficients[k])},
                     {"phases", r.component_phases[k]}});
  }
  return {{"m", r.m},
          {"d", r.d},
          {"is_ghz", r.is_ghz},
          {"nonzero_count", r.nonzero_count},
          {"equal_magnitudes", r.equal_magnitudes},
          {"pairwise_orthogonal", r.pairwise_orthogonal},
          {"components", comps}};
}

Json to_json(const MQCSpectrum& s) {
  Json values = Json::array();
  for (int m = -s.m_max; m <= s.m_max; ++m) values.push_back({{"m", m}, {"I", s.at(m)}});
  return {{"m_max", s.m_max}, {"samples", s.samples}, {"values", values}};
}

Json to_json(const CoherenceMagnitudes& m) {
  return {{"rho01", m.rho01}, {"rho02", m.rho02}, {"rho12", m.rho12}};
}

Json to_json(const GHZBlock& b) {
  Json j = {{"populations", b.populations}, {"magnitudes", b.magnitudes}};
  if (b.phases) j["phases"] = *b.phases;
  return j;
}

Json to_json(const Verdict& v) {
  return {{"d", v.d},
          {"threshold", v.threshold},
          {"lower", v.bounds.lower},
          {"upper", v.bounds.upper},
          {"s", v.bounds.s},
          {"certified", v.certified},
          {"relabeling", v.bounds.relabeling},
          {"margin", v.margin},
          {"s_raw", v.bounds.s_raw},
          {"s_eigen", v.bounds.s_eigen},
          {"degenerate", v.bounds.degenerate}};
}

Json to_json(const Circuit& c) {
  Json ops = Json::array();
  for (const auto& op : c.ops) {
    if (const auto* g = std::get_if<SwapGate>(&op)) {
      Json o = {{"kind", "swap"}, {"levels", {g->gamma, g->alpha}}};
      if (g->adjoint) o["adjoint"] = true;
      ops.push_back(o);
    } else if (const auto* g = std::get_if<OatGate>(&op)) {
      ops.push_back({{"kind", "oat"}, {"levels", {g->alpha, g->beta}}, {"duration", g->duration}});
    } else if (const auto* g = std::get_if<MsGate>(&op)) {
      ops.push_back({{"kind", "ms"}, {"levels", {g->alpha, g->beta}}, {"duration", g->duration}});
    } else if (const auto* g = std::get_if<RotationGate>(&op)) {
      ops.push_back({{"kind", "rotation"},
                     {"levels", {g->alpha, g->beta}},
                     {"axis", g->axis == Axis::x ? "x" : "y"},
                     {"angle", g->angle}});
    }
  }
  return {{"n", c.dims.n()}, {"d", c.dims.d()}, {"ops", ops}};
}

Circuit circuit_from_json(const Json& j) {
  Circuit c{SystemDims(get_as<int>(j, "n"), get_as<int>(j, "d")), {}};
  const Json& ops = require(j, "ops");
  if (!ops.is_array()) throw SchemaError("\"ops\" must be an array");
  for (const auto& op : ops) {
    const auto kind = get_as<std::string>(op, "kind");
    const auto lv = levels(op);
    if (kind == "swap") {
      const bool adjoint = op.contains("adjoint") ? get_as<bool>(op, "adjoint") : false;
      c.ops.emplace_back(SwapGate{lv[0], lv[1], adjoint});
    } else if (kind == "oat") {
      c.ops.emplace_back(OatGate{lv[0], lv[1], get_as<double>(op, "duration")});
    } else if (kind == "ms") {
      c.ops.emplace_back(MsGate{lv[0], lv[1], get_as<double>(op, "duration")});
    } else if (kind == "rotation") {
      const auto axis = get_as<std::string>(op, "axis");
      if (axis != "x" && axis != "y") throw SchemaError("rotation axis must be \"x\" or \"y\"");
      c.ops.emplace_back(RotationGate{lv[0], lv[1], axis == "x" ? Axis::x : Axis::y,
                                      get_as<double>(op, "angle")});
    } else {
      throw SchemaError("unknown gate kind \"" + kind + "\"");
    }
  }
  c.validate();
  return c;
}

GHZBlock block_from_json(const Json& j) {
  if (j.contains("d") && get_as<int>(j, "d") != 3) {
    throw UnsupportedDimension("block documents are supported for d = 3 only");
  }
  std::optional<std::array<double, 3>> phases;
  if (j.contains("phases")) phases = triple(j, "phases");
  return GHZBlock::make(triple(j, "populations"), triple(j, "magnitudes"), phases);
}

} // namespace boat
