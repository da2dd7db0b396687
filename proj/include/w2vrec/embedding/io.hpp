#pragma once

#include <w2vrec/binary_io.hpp>
#include <w2vrec/embedding/model.hpp>

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace w2vrec::embedding {

inline constexpr char kModelMagic[5] = "W2VR";
inline constexpr std::uint32_t kModelVersion = 1;

// Layout (all little-endian):
//   magic "W2VR" | u32 version | u64 |vocab| | u32 F | u8 architecture
//   |vocab| x (u32 length, token bytes, u64 frequency)
//   input matrix, then output matrix, row-major f32
template <typename Real>
void save_model(std::ostream& out, const EmbeddingModel<Real>& model) {
  out.write(kModelMagic, 4);
  binary::write_le<std::uint32_t>(out, kModelVersion);
  binary::write_le<std::uint64_t>(out, model.rows());
  binary::write_le<std::uint32_t>(out, static_cast<std::uint32_t>(model.features()));
  binary::write_le<std::uint8_t>(out, static_cast<std::uint8_t>(model.config().architecture));
  const auto& vocab = model.vocab();
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    binary::write_string(out, vocab.tokens()[i]);
    binary::write_le<std::uint64_t>(out, vocab.frequencies()[i]);
  }
  for (auto x : model.input_matrix()) binary::write_f32(out, static_cast<float>(x));
  for (auto x : model.output_matrix()) binary::write_f32(out, static_cast<float>(x));
  if (!out) throw IoError("failed writing model");
}

inline EmbeddingModel<float> load_model(std::istream& in) {
  binary::expect_magic(in, kModelMagic);
  const auto version = binary::read_le<std::uint32_t>(in);
  if (version != kModelVersion) {
    throw FormatError("unsupported model version " + std::to_string(version));
  }
  const auto rows = binary::read_le<std::uint64_t>(in);
  const auto features = binary::read_le<std::uint32_t>(in);
  const auto arch = binary::read_le<std::uint8_t>(in);
  if (features == 0) throw FormatError("model has zero features");
  if (arch > 1) throw FormatError("unknown architecture flag in model");

  std::vector<std::string> tokens;
  std::vector<std::uint64_t> freqs;
  for (std::uint64_t i = 0; i < rows; ++i) {
    tokens.push_back(binary::read_string(in));
    freqs.push_back(binary::read_le<std::uint64_t>(in));
  }
  TrainingConfig config;
  config.features = features;
  config.architecture = static_cast<Architecture>(arch);
  EmbeddingModel<float> model(Vocabulary(std::move(tokens), std::move(freqs)), config);
  for (auto& x : model.input_matrix()) x = binary::read_f32(in);
  for (auto& x : model.output_matrix()) x = binary::read_f32(in);
  return model;
}

template <typename Real>
void save_model(const std::string& path, const EmbeddingModel<Real>& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write model file: " + path);
  save_model(out, model);
}

inline EmbeddingModel<float> load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open model file: " + path);
  return load_model(in);
}

// One line per token: token followed by the F input-vector components.
template <typename Real>
void export_text(std::ostream& out, const EmbeddingModel<Real>& model) {
  out << std::setprecision(9);
  for (std::size_t i = 0; i < model.rows(); ++i) {
    out << model.vocab().tokens()[i];
    for (auto x : model.input_row(static_cast<TokenIndex>(i))) out << ' ' << x;
    out << '\n';
  }
}

}  // namespace w2vrec::embedding
