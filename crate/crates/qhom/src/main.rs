fn main() {
    std::process::exit(qhom::run());
}
