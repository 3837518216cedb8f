fn main() { std::process::exit(su2static::cli::main()) }
