#pragma once

#include <algorithm>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace kleinian {

// A named variable with an integer Sato weight. Capped symbols (u's, xi's)
// count toward series truncation caps; parameters (lambda's, nu) do not.
struct Symbol {
    std::string name;
    int weight = 0;
    bool capped = false;

    bool operator==(const Symbol& o) const {
        return name == o.name && weight == o.weight && capped == o.capped;
    }
};

inline constexpr int kMaxRingSymbols = 16;

// Immutable ordered symbol list; shared between polynomials of the same ring.
class Ring {
public:
    Ring() : impl_(std::make_shared<Impl>()) {}

    explicit Ring(std::vector<Symbol> symbols) {
        if (symbols.size() > kMaxRingSymbols)
            throw std::invalid_argument("Ring: too many symbols");
        auto impl = std::make_shared<Impl>();
        impl->symbols = std::move(symbols);
        for (size_t i = 0; i < impl->symbols.size(); ++i) {
            auto [it, fresh] = impl->index.emplace(impl->symbols[i].name, static_cast<int>(i));
            if (!fresh) throw std::invalid_argument("Ring: duplicate symbol " + impl->symbols[i].name);
        }
        impl_ = std::move(impl);
    }

    size_t size() const { return impl_->symbols.size(); }
    const Symbol& at(size_t i) const { return impl_->symbols[i]; }
    const std::vector<Symbol>& symbols() const { return impl_->symbols; }

    int index_of(const std::string& name) const {
        auto it = impl_->index.find(name);
        return it == impl_->index.end() ? -1 : it->second;
    }
    int require(const std::string& name) const {
        int i = index_of(name);
        if (i < 0) throw std::invalid_argument("Ring: unknown symbol " + name);
        return i;
    }
    bool has(const std::string& name) const { return index_of(name) >= 0; }

    bool same(const Ring& o) const {
        return impl_ == o.impl_ || impl_->symbols == o.impl_->symbols;
    }

    // Ring with the same symbols plus extras appended.
    Ring extended(const std::vector<Symbol>& extra) const {
        std::vector<Symbol> all = impl_->symbols;
        all.insert(all.end(), extra.begin(), extra.end());
        return Ring(std::move(all));
    }

private:
    struct Impl {
        std::vector<Symbol> symbols;
        std::unordered_map<std::string, int> index;
    };
    std::shared_ptr<const Impl> impl_;
};

}  // namespace kleinian
