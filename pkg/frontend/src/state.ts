/** View state and its transitions.
 *
 * Invariant: selectedHandler, when set, always belongs to the selected
 * widget's handler list; transitions that would break that clear it.
 */

export interface SelectableWidget {
  id: string;
  handlers: string[];
}

export interface ViewState {
  selectedWidget: string | null;
  selectedHandler: string | null;
  collapseEnabled: boolean;
  openSourceDiff: string | null;
}

export function initialState(): ViewState {
  return {
    selectedWidget: null,
    selectedHandler: null,
    collapseEnabled: false,
    openSourceDiff: null,
  };
}

export function selectWidget(state: ViewState, widget: SelectableWidget): ViewState {
  const keepHandler =
    state.selectedHandler !== null && widget.handlers.includes(state.selectedHandler);
  return {
    ...state,
    selectedWidget: widget.id,
    selectedHandler: keepHandler ? state.selectedHandler : null,
    openSourceDiff: null,
  };
}

export function selectHandler(
  state: ViewState,
  widget: SelectableWidget,
  handler: string,
): ViewState {
  if (state.selectedWidget !== widget.id || !widget.handlers.includes(handler)) {
    return state;
  }
  return { ...state, selectedHandler: handler, openSourceDiff: null };
}

export function toggleCollapse(state: ViewState): ViewState {
  return { ...state, collapseEnabled: !state.collapseEnabled };
}

export function openSourceDiff(state: ViewState, sig: string): ViewState {
  return { ...state, openSourceDiff: sig };
}

export function closeSourceDiff(state: ViewState): ViewState {
  return { ...state, openSourceDiff: null };
}
