#pragma once

#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace chidef {

struct Generator {
    std::string label;
    int degree = 0; // cohomological degree
};

enum class Side { left, right };

// Free translation-equivariant D-module on the affine line: a finite list of
// generators over the one-variable algebra k[d].
class TransDModule {
public:
    TransDModule(std::string name, std::vector<Generator> basis, Side side)
        : name_(std::move(name)), basis_(std::move(basis)), side_(side) {
        std::set<std::string> seen;
        for (const auto& g : basis_)
            if (!seen.insert(g.label).second)
                throw std::invalid_argument("TransDModule: duplicate generator label " + g.label);
    }

    const std::string& name() const { return name_; }
    const std::vector<Generator>& basis() const { return basis_; }
    std::size_t rank() const { return basis_.size(); }
    Side side() const { return side_; }

    std::size_t index_of(const std::string& label) const {
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (basis_[i].label == label) return i;
        throw std::invalid_argument("TransDModule " + name_ + ": no generator " + label);
    }

    bool operator==(const TransDModule& o) const {
        if (name_ != o.name_ || side_ != o.side_ || basis_.size() != o.basis_.size()) return false;
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (basis_[i].label != o.basis_[i].label || basis_[i].degree != o.basis_[i].degree)
                return false;
        return true;
    }

private:
    std::string name_;
    std::vector<Generator> basis_;
    Side side_;
};

using ModulePtr = std::shared_ptr<const TransDModule>;

// The distinguished rank-1 right module with one degree-0 generator.
inline ModulePtr omega_module() {
    static ModulePtr w = std::make_shared<TransDModule>(
        "omega", std::vector<Generator>{{"w", 0}}, Side::right);
    return w;
}

// Dual module: generator labels in bijection with the base, suffixed "^".
inline ModulePtr dual_module(const ModulePtr& base) {
    std::vector<Generator> dual;
    for (const auto& g : base->basis()) dual.push_back({g.label + "^", -g.degree});
    return std::make_shared<TransDModule>(base->name() + "^", std::move(dual), base->side());
}

} // namespace chidef
