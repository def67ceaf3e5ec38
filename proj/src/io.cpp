#include "cstar/io.hpp"

#include <fstream>
#include <nlohmann/json.hpp>

namespace cstar {

namespace {

using nlohmann::json;

Matrix block_from_json(const json& entry, int expected_dim, int index) {
  if (!entry.is_object() || !entry.contains("re"))
    throw MalformedInput("block " + std::to_string(index) +
                         " must be an object with an 're' matrix");

  auto read_rows = [&](const json& rows, const char* part) {
    if (!rows.is_array() || static_cast<int>(rows.size()) != expected_dim)
      throw MalformedInput("block " + std::to_string(index) + " '" + part +
                           "' must be a " + std::to_string(expected_dim) +
                           "-row matrix");
    Eigen::MatrixXd m(expected_dim, expected_dim);
    for (int r = 0; r < expected_dim; ++r) {
      const json& row = rows[static_cast<size_t>(r)];
      if (!row.is_array() || static_cast<int>(row.size()) != expected_dim)
        throw MalformedInput("block " + std::to_string(index) + " '" + part +
                             "' row " + std::to_string(r) + " must have " +
                             std::to_string(expected_dim) + " entries");
      for (int c = 0; c < expected_dim; ++c) {
        const json& cell = row[static_cast<size_t>(c)];
        if (!cell.is_number())
          throw MalformedInput("block " + std::to_string(index) +
                               " contains a non-numeric entry");
        m(r, c) = cell.get<double>();
      }
    }
    return m;
  };

  Eigen::MatrixXd re = read_rows(entry["re"], "re");
  Eigen::MatrixXd im = entry.contains("im")
                           ? read_rows(entry["im"], "im")
                           : Eigen::MatrixXd::Zero(expected_dim, expected_dim);
  return re.cast<Complex>() + Complex(0.0, 1.0) * im.cast<Complex>();
}

std::vector<Matrix> blocks_from_json(const json& doc, const char* key,
                                     const AlgebraShape& shape) {
  if (!doc.contains(key) || !doc[key].is_array())
    throw MalformedInput(std::string("document needs a '") + key +
                         "' array");
  const json& arr = doc[key];
  if (static_cast<int>(arr.size()) != shape.block_count())
    throw MalformedInput(std::string("'") + key + "' has " +
                         std::to_string(arr.size()) + " blocks, shape has " +
                         std::to_string(shape.block_count()));
  std::vector<Matrix> blocks;
  blocks.reserve(arr.size());
  for (int k = 0; k < shape.block_count(); ++k)
    blocks.push_back(
        block_from_json(arr[static_cast<size_t>(k)], shape.block_dim(k), k));
  return blocks;
}

AlgebraShape shape_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("shape") || !doc["shape"].is_array())
    throw MalformedInput("document needs a 'shape' array");
  std::vector<int> dims;
  for (const json& entry : doc["shape"]) {
    if (!entry.is_number_integer())
      throw MalformedInput("'shape' entries must be integers");
    dims.push_back(entry.get<int>());
  }
  return AlgebraShape(std::move(dims));
}

json block_to_json(const Matrix& m) {
  json re = json::array();
  json im = json::array();
  bool has_imag = false;
  for (int r = 0; r < m.rows(); ++r) {
    json re_row = json::array();
    json im_row = json::array();
    for (int c = 0; c < m.cols(); ++c) {
      re_row.push_back(m(r, c).real());
      im_row.push_back(m(r, c).imag());
      if (m(r, c).imag() != 0.0) has_imag = true;
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  json entry;
  entry["re"] = std::move(re);
  if (has_imag) entry["im"] = std::move(im);
  return entry;
}

}  // namespace

AlgebraElement element_from_json(const json& doc) {
  AlgebraShape shape = shape_from_json(doc);
  return AlgebraElement(shape, blocks_from_json(doc, "blocks", shape));
}

json element_to_json(const AlgebraElement& x) {
  json doc;
  doc["shape"] = x.shape().blocks();
  json blocks = json::array();
  for (int k = 0; k < x.block_count(); ++k)
    blocks.push_back(block_to_json(x.block(k)));
  doc["blocks"] = std::move(blocks);
  return doc;
}

State state_from_json(const json& doc) {
  AlgebraShape shape = shape_from_json(doc);
  return State(shape, blocks_from_json(doc, "rho", shape));
}

json state_to_json(const State& E) {
  json doc;
  doc["shape"] = E.shape().blocks();
  json rho = json::array();
  for (int k = 0; k < E.block_count(); ++k)
    rho.push_back(block_to_json(E.density(k)));
  doc["rho"] = std::move(rho);
  return doc;
}

json certificate_to_json(const EigenstateCertificate& cert) {
  return json{{"lambda", {cert.lambda.real(), cert.lambda.imag()}},
              {"residual", cert.residual},
              {"definition_defect", cert.definition_defect},
              {"probes_used", cert.probes_used},
              {"accepted", cert.accepted}};
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw MalformedInput("'" + path + "' is not valid JSON: " + e.what());
  }
}

AlgebraElement load_element(const std::string& path) {
  return element_from_json(load_json(path));
}

State load_state(const std::string& path) {
  return state_from_json(load_json(path));
}

void save_json(const json& doc, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw MalformedInput("cannot open '" + path + "' for writing");
  out << doc.dump(2) << '\n';
}

}  // namespace cstar
