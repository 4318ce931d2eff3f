use std::collections::VecDeque;

use crate::image::DepthImage;

/// Frames retained per environment; enough for the longest delay plus the
/// current frame.
pub const DELAY_CAPACITY: usize = 5;

/// Ring of the most recent processed frames. Emits the frame from
/// `delay` steps ago once it holds `delay + 1` frames, and the oldest
/// retained frame before that.
#[derive(Clone, Debug)]
pub struct DelayBuffer {
    delay: usize,
    frames: VecDeque<DepthImage>,
}

impl DelayBuffer {
    pub fn new(delay: u32) -> Self {
        let delay = (delay as usize).min(DELAY_CAPACITY - 1);
        Self {
            delay,
            frames: VecDeque::with_capacity(DELAY_CAPACITY),
        }
    }

    pub fn delay(&self) -> usize {
        self.delay
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    pub fn is_warm(&self) -> bool {
        self.frames.len() > self.delay
    }

    /// Stores the newest frame and returns the one to emit now.
    pub fn push(&mut self, frame: DepthImage) -> DepthImage {
        if self.frames.len() == DELAY_CAPACITY {
            self.frames.pop_front();
        }
        self.frames.push_back(frame);
        let idx = if self.is_warm() {
            self.frames.len() - 1 - self.delay
        } else {
            0
        };
        self.frames[idx].clone()
    }

    pub fn clear(&mut self) {
        self.frames.clear();
    }
}
