use uqcenter::affine_orbits::{Action, DEFAULT_BUDGET};
use uqcenter::{Admissibility, Result, RootDatum, RootType};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Everything a command needs besides its own operands.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub root_type: RootType,
    pub rank: usize,
    pub l: u32,
    pub action: Action,
    pub format: Format,
    pub budget: u128,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            root_type: RootType::A,
            rank: 1,
            l: 3,
            action: Action::BulletOnP,
            format: Format::Text,
            budget: DEFAULT_BUDGET,
        }
    }
}

impl RunConfig {
    pub fn type_label(&self) -> String {
        format!("{}{}", self.root_type, self.rank)
    }

    pub fn datum(&self) -> Result<RootDatum> {
        RootDatum::build(self.root_type, self.rank)
    }

    pub fn admissibility(&self) -> Result<Admissibility> {
        Ok(self.datum()?.check_l(i64::from(self.l)))
    }

    /// The datum, once `l` has passed `check_l`.
    pub fn validated(&self) -> Result<RootDatum> {
        let datum = self.datum()?;
        datum.check_l(i64::from(self.l)).into_result()?;
        Ok(datum)
    }

    /// The rank-one commands ignore `--type/--rank` but still need an admissible `l`.
    pub fn validated_sl2(&self) -> Result<()> {
        RootDatum::build(RootType::A, 1)?.check_l(i64::from(self.l)).into_result()
    }
}
