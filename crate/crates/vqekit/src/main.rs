fn main() { vqekit::cli::run(); }
