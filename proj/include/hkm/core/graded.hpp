#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace hkm {

struct BasisLabel {
  std::string name;
  int degree = 0;
  std::vector<int> weight;
};

/// Finite window of a graded space: uniquely named basis vectors with degrees.
class GradedSpaceWindow {
 public:
  GradedSpaceWindow() = default;

  std::size_t add(BasisLabel l) {
    if (index_.count(l.name)) throw std::invalid_argument("duplicate basis label: " + l.name);
    index_.emplace(l.name, labels_.size());
    labels_.push_back(std::move(l));
    return labels_.size() - 1;
  }
  std::size_t add(std::string name, int degree, std::vector<int> weight = {}) {
    return add(BasisLabel{std::move(name), degree, std::move(weight)});
  }

  std::size_t size() const { return labels_.size(); }
  const BasisLabel& operator[](std::size_t i) const { return labels_.at(i); }
  const std::vector<BasisLabel>& labels() const { return labels_; }

  bool contains(const std::string& name) const { return index_.count(name) != 0; }
  std::size_t index(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw std::out_of_range("unknown basis label: " + name);
    return it->second;
  }

  /// Indices grouped by degree.
  std::map<int, std::vector<std::size_t>> by_degree() const {
    std::map<int, std::vector<std::size_t>> out;
    for (std::size_t i = 0; i < labels_.size(); ++i) out[labels_[i].degree].push_back(i);
    return out;
  }

  GradedSpaceWindow shifted(int k) const {
    GradedSpaceWindow w;
    for (auto l : labels_) {
      l.degree += k;
      w.add(std::move(l));
    }
    return w;
  }

 private:
  std::vector<BasisLabel> labels_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace hkm
