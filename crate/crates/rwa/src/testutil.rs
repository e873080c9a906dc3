use crate::interactions::{EngineInputs, ModeParams, QubitCouplings};
use crate::resonance::resonant_drives;
use jjdirac_core::config::DriveAmplitudes;

/// Hand-picked inputs close to the default operating point.
pub fn sample_inputs(dim: u8) -> EngineInputs {
    let q1 = QubitCouplings {
        big_z: [0.0, -0.28, -3.03, 0.0],
        big_x: [11.63, 0.0, -0.279, 0.0],
    };
    let q2 = QubitCouplings {
        big_z: [15.51, 0.0, -0.37, 0.0],
        big_x: [0.0, 0.37, 4.04, 0.0],
    };
    let phase = |e: f64| Some(ModeParams::from_stiffness(e / 1e6, 0.14 * e + 4.0));
    let bus = |w: f64| Some(ModeParams::from_stiffness(w * w / 64000.0, 8000.0));
    let mut inputs = EngineInputs {
        dimension: dim,
        qubit1: q1,
        qubit2: (dim > 1).then_some(q2),
        phase: [phase(850.0), (dim > 1).then(|| phase(1100.0)).flatten(), (dim > 2).then(|| phase(1350.0)).flatten()],
        bus: [bus(150.0), (dim > 1).then(|| bus(165.0)).flatten(), (dim > 2).then(|| bus(180.0)).flatten()],
        bus_o: (dim > 1).then(|| bus(1000.0)).flatten(),
        e_l: [Some(4.1), (dim > 1).then_some(4.1), (dim > 2).then_some(4.1)],
        drives: vec![],
    };
    inputs.drives = resonant_drives(&inputs, &DriveAmplitudes::default());
    inputs
}
