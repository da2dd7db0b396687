#pragma once

#include <w2vrec/error.hpp>

#include <array>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace w2vrec {

enum class Method { KNI, NN, KIU, CF, Random, SVD, CCDPP };

inline constexpr std::array kAllMethods = {Method::KNI, Method::NN,  Method::KIU,  Method::CF,
                                           Method::Random, Method::SVD, Method::CCDPP};

inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::KNI: return "KNI";
    case Method::NN: return "NN";
    case Method::KIU: return "KIU";
    case Method::CF: return "CF";
    case Method::Random: return "Random";
    case Method::SVD: return "SVD";
    case Method::CCDPP: return "CCD++";
  }
  return "?";
}

inline Method parse_method(std::string_view s) {
  std::string lower(s);
  for (auto& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "kni") return Method::KNI;
  if (lower == "nn") return Method::NN;
  if (lower == "kiu") return Method::KIU;
  if (lower == "cf" || lower == "cf-c") return Method::CF;
  if (lower == "random") return Method::Random;
  if (lower == "svd") return Method::SVD;
  if (lower == "ccd++" || lower == "ccdpp") return Method::CCDPP;
  throw ConfigError("unknown method: " + std::string(s));
}

inline bool uses_embedding(Method m) { return m == Method::KNI || m == Method::NN || m == Method::KIU; }

struct RecommendedItem {
  std::string venue;  // raw venue id, no namespace prefix
  double score = 0.0;

  friend bool operator==(const RecommendedItem&, const RecommendedItem&) = default;
};

// Top-k venues for one user. An empty list is a coverage miss.
struct RecommendationList {
  std::string user;
  Method method = Method::KNI;
  std::vector<RecommendedItem> items;
  std::string no_prediction_reason;

  bool predicted() const { return !items.empty(); }

  static RecommendationList no_prediction(std::string user, Method method, std::string reason) {
    RecommendationList list;
    list.user = std::move(user);
    list.method = method;
    list.no_prediction_reason = std::move(reason);
    return list;
  }
};

}  // namespace w2vrec
