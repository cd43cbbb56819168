//! Key = value parameter files for the auxiliary code.
//!
//! Recognized keys: `q`, `sigma`, `m`, `p_tilde`, `t_colors`, `n_hat`,
//! `gamma`, `l_edit`. Lines starting with `#` are comments.

use tdcode::auxcode::AuxParams;
use tdcode::seq;

pub fn load_aux_params(path: &str) -> Result<AuxParams, String> {
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    parse_aux_params(&text)
}

pub fn parse_aux_params(text: &str) -> Result<AuxParams, String> {
    let mut params = AuxParams::default_q4();
    let mut sigma_text: Option<String> = None;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected key = value", lineno + 1))?;
        let (key, value) = (key.trim(), value.trim());
        let int = || value.parse::<usize>().map_err(|e| format!("{key}: {e}"));
        match key {
            "q" => params.q = value.parse().map_err(|e| format!("q: {e}"))?,
            "sigma" => sigma_text = Some(value.to_string()),
            "m" => params.m = int()?,
            "p_tilde" => params.p_tilde = int()?,
            "t_colors" => params.t_colors = int()?,
            "n_hat" => params.n_hat = int()?,
            "gamma" => params.gamma = int()? as u32,
            "l_edit" => params.l_edit = int()?,
            other => return Err(format!("unknown key {other:?}")),
        }
    }
    if let Some(text) = sigma_text {
        params.sigma = seq::parse_seq(&text, params.q).map_err(|e| e.to_string())?;
    }
    params.validate_shape().map_err(|e| e.to_string())?;
    Ok(params)
}
