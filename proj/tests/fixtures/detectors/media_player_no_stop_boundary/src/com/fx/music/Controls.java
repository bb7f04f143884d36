package com.fx.music;

import java.util.List;
import java.util.Map;
import java.util.ArrayList;
import android.app.Activity;
import android.os.Bundle;
import android.media.MediaPlayer;

@SuppressWarnings({"unchecked", "rawtypes"})
public class Controls extends Activity implements Runnable {
    private static final int[] CODES = new int[] {1, 2, 3};
    private final List<Map<String, Integer>> cache = new ArrayList<>();
    private MediaPlayer player;

    @Override
    protected void onCreate(Bundle savedInstanceState) {
        super.onCreate(savedInstanceState);
        String[][] grid = new String[2][3];
        Map<String, List<int[]>> nested = null;
        for (int code : CODES) {
            if (code > 2 && grid.length > 0) {
                cache.add(null);
            }
        }
        player.stop();
    }

    @Override
    public void run() {
        Runnable r = () -> cache.clear();
        r.run();
    }
}
