/** Dual-handle range slider built from two overlapped native range inputs.
 *  Invalid states (lo > hi) are prevented by clamping the dragged handle. */

export interface DualSlider {
  root: HTMLElement;
  setRange(lo: number, hi: number): void;
  getRange(): [number, number];
  setBounds(min: number, max: number): void;
}

export interface DualSliderOptions {
  label: string;
  min: number;
  max: number;
  onChange(lo: number, hi: number): void;
  format?(value: number): string;
}

export function createDualSlider(options: DualSliderOptions): DualSlider {
  const fmt = options.format ?? ((v: number) => String(Math.round(v * 100) / 100));
  let { min, max } = options;

  const root = document.createElement("div");
  root.className = "slider";

  const caption = document.createElement("div");
  caption.className = "slider-label";
  const readout = document.createElement("span");
  readout.className = "slider-readout";
  caption.textContent = options.label + " ";
  caption.appendChild(readout);

  const track = document.createElement("div");
  track.className = "slider-track";
  const lo = document.createElement("input");
  const hi = document.createElement("input");
  for (const input of [lo, hi]) {
    input.type = "range";
    input.step = "any";
    track.appendChild(input);
  }
  lo.className = "thumb thumb-lo";
  hi.className = "thumb thumb-hi";

  root.appendChild(caption);
  root.appendChild(track);

  function applyBounds(): void {
    for (const input of [lo, hi]) {
      input.min = String(min);
      input.max = String(max);
    }
  }

  function currentRange(): [number, number] {
    return [Number(lo.value), Number(hi.value)];
  }

  function refreshReadout(): void {
    const [a, b] = currentRange();
    readout.textContent = `${fmt(a)} – ${fmt(b)}`;
  }

  function handleInput(moved: "lo" | "hi"): void {
    let [a, b] = currentRange();
    if (a > b) {
      // dragged past the other handle; pin to it
      if (moved === "lo") {
        a = b;
        lo.value = String(a);
      } else {
        b = a;
        hi.value = String(b);
      }
    }
    refreshReadout();
    options.onChange(a, b);
  }

  lo.addEventListener("input", () => handleInput("lo"));
  hi.addEventListener("input", () => handleInput("hi"));

  applyBounds();
  lo.value = String(min);
  hi.value = String(max);
  refreshReadout();

  return {
    root,
    setRange(a: number, b: number): void {
      lo.value = String(Math.max(min, Math.min(a, max)));
      hi.value = String(Math.max(min, Math.min(b, max)));
      refreshReadout();
    },
    getRange: currentRange,
    setBounds(newMin: number, newMax: number): void {
      min = newMin;
      max = newMax;
      applyBounds();
      lo.value = String(min);
      hi.value = String(max);
      refreshReadout();
    },
  };
}
