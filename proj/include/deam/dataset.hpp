#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace deam {

struct Dataset {
    std::string name;
    std::size_t n = 0;
    std::size_t d = 0;
    std::size_t num_classes = 0;
    std::vector<double> features; // n x d, row-major
    std::vector<int> labels;      // values in [0, num_classes)

    double feature(std::size_t i, std::size_t j) const { return features[i * d + j]; }
    const double* row(std::size_t i) const { return features.data() + i * d; }

    // n >= 1, label range valid, no non-finite features.
    void validate() const;
};

// C Gaussian clusters with unit covariance and means `separation` apart along
// distinct axes; labels assigned round-robin. Deterministic under seed.
Dataset gen_blobs(std::size_t n, std::size_t d, std::size_t num_classes, double separation,
                  std::uint64_t seed);

// IDX image/label pair (big-endian, magic 0x00000803 / 0x00000801). Pixels
// are scaled to [0, 1] and images flattened row-major. Malformed input is an
// IoError naming the byte offset.
Dataset load_idx(const std::filesystem::path& images_path,
                 const std::filesystem::path& labels_path,
                 std::optional<std::size_t> limit = std::nullopt);

// Inverse of load_idx for datasets whose features lie on the k/255 grid;
// writes a (1 x d)-shaped image per sample.
void save_idx(const Dataset& data, const std::filesystem::path& images_path,
              const std::filesystem::path& labels_path);

// Rectangular numeric CSV with a header row; `label_column` holds integer
// class labels, every other column becomes a feature.
Dataset load_csv(const std::filesystem::path& path, const std::string& label_column);

} // namespace deam
