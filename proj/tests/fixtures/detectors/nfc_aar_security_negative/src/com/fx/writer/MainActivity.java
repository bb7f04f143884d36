package com.fx.writer;

import java.util.List;
import java.util.Map;
import java.util.ArrayList;
import android.app.Activity;
import android.os.Bundle;
import android.nfc.NdefMessage;
import android.nfc.NdefRecord;
import android.nfc.tech.Ndef;

@SuppressWarnings({"unchecked", "rawtypes"})
public class MainActivity extends Activity implements Runnable {
    private static final int[] CODES = new int[] {1, 2, 3};
    private final List<Map<String, Integer>> cache = new ArrayList<>();

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
        NdefRecord aar = NdefRecord.createApplicationRecord("com.fx.writer");
        Ndef ndef = Ndef.get(tag);
        NdefMessage message = new NdefMessage(new NdefRecord[] {NdefRecord.createUri("https://example.com")});
        ndef.connect();
        ndef.writeNdefMessage(message);
    }

    @Override
    public void run() {
        Runnable r = () -> cache.clear();
        r.run();
    }
}
