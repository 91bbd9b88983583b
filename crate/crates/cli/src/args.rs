use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "specrec", version, about = "Exact free energies and correlators of genus-zero spectral curves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Free energies F_g along the requested computation paths.
    Freeenergy(FreeEnergyArgs),
    /// Appendix identities and correlator invariants.
    VerifyIdentities(VerifyArgs),
    /// Pole-basis dump of one omega_{g,n}.
    EmitOmega(OmegaArgs),
    /// The curve catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum CatalogAction {
    /// Names, parameter schemas and closed-form availability.
    List {
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Args, Debug, Clone)]
pub struct CurveArgs {
    /// Catalog name, or path to a JSON/TOML curve config.
    #[arg(long)]
    pub curve: String,
    /// Catalog parameter `name=v1,v2,..`; overrides --params-file.
    #[arg(long = "param")]
    pub params: Vec<String>,
    /// JSON/TOML table of catalog parameters.
    #[arg(long)]
    pub params_file: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct FreeEnergyArgs {
    #[command(flatten)]
    pub curve: CurveArgs,
    #[arg(long, default_value_t = 3)]
    pub gmax: usize,
    #[arg(long, value_enum, default_value_t = Method::All)]
    pub method: Method,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Closed-form convention the other paths are compared with.
    #[arg(long, value_enum, default_value_t = ConventionArg::Printed)]
    pub convention: ConventionArg,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Include per-path wall-clock times (makes output nondeterministic).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub suite: String,
    #[arg(long, default_value_t = 2)]
    pub gmax: usize,
    /// Curve for the loop-equation suite.
    #[arg(long, default_value = "harer-zagier")]
    pub curve: String,
    #[arg(long = "param")]
    pub params: Vec<String>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct OmegaArgs {
    #[command(flatten)]
    pub curve: CurveArgs,
    #[arg(long)]
    pub g: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Tr,
    Duality,
    Both,
    All,
}

impl Method {
    pub fn tr(self) -> bool {
        self != Method::Duality
    }
    pub fn duality(self) -> bool {
        self != Method::Tr
    }
    pub fn closed_form(self) -> bool {
        self == Method::All
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Md,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConventionArg {
    Printed,
    Reconciled,
}
