/** What to draw: which CSVs, which columns, where the image goes. */
export interface FigureSpec {
  /** CSV files whose rows are concatenated before grouping. */
  inputs: string[];
  /** Column giving the x coordinate. */
  xColumn: string;
  /** Column giving the y coordinate (a rate; zero means no key). */
  yColumn: string;
  /** Optional column whose distinct values split rows into one curve each. */
  seriesColumn?: string;
  /** Output SVG path. */
  output: string;
  xLog?: boolean;
  yLog?: boolean;
  title?: string;
}

export const DEFAULT_X_COLUMN = "beta";
export const DEFAULT_Y_COLUMN = "r_total";
